//! Batch command-line front end: counting, polynomials, series, bijections,
//! configuration listings, and the verification battery, with deterministic
//! JSON (or CSV for flat count tables) on standard output.
//!
//! Exit codes: 0 on success, 1 on usage or operation errors, 2 when a
//! verification check fails.

use std::collections::BTreeSet;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{BigInt, Zero};
use serde_json::{json, Map, Value};

use braiddeform::arrangement::{is_feasible, Sign};
use braiddeform::biject;
use braiddeform::count;
use braiddeform::genfun;
use braiddeform::oracle;
use braiddeform::poly::{tutte_from_coboundary, zaslavsky};
use braiddeform::polyrat::{PolyRat, Var};
use braiddeform::series::ExpSeries;
use braiddeform::sketch;
use braiddeform::spec::DeformationSpec;
use braiddeform::tree::{self, PlaneTree};

#[derive(Parser)]
#[command(
    name = "braiddeform",
    version,
    about = "Exact counts, polynomials and bijections for integer deformations of the braid arrangement"
)]
struct Cli {
    /// Number of worker threads for the enumeration passes
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Arrangement description file (JSON)
    #[arg(long)]
    spec: Option<String>,
    /// Offsets of a one-type arrangement, comma separated (e.g. "-1,0,1")
    #[arg(long = "S", allow_hyphen_values = true)]
    offsets: Option<String>,
    /// Number of coordinates for a one-type arrangement
    #[arg(long)]
    n: Option<usize>,
}

impl SpecArgs {
    fn load(&self) -> Result<DeformationSpec> {
        match (&self.spec, &self.offsets) {
            (Some(path), None) => {
                let text =
                    std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
                let value: Value = serde_json::from_str(&text).context("spec file is not JSON")?;
                Ok(DeformationSpec::from_json(&value)?)
            }
            (None, Some(list)) => {
                let offsets = parse_offsets(list)?;
                let n = self.n.ok_or_else(|| anyhow!("--S requires --n"))?;
                Ok(DeformationSpec::uniform(&offsets, n))
            }
            (Some(_), Some(_)) => bail!("--spec and --S are mutually exclusive"),
            (None, None) => bail!("one of --spec or --S is required"),
        }
    }
}

fn parse_offsets(list: &str) -> Result<Vec<i64>> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| anyhow!("bad offset {tok:?}"))
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Signed,
    Unsigned,
    Whitney,
    Sketch,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyKind {
    Characteristic,
    Coboundary,
    Tutte,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    Regions,
    Coboundary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BijectionOp {
    TreeRegion,
    Parking,
    Theta,
    Audit,
    MovesAudit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scale {
    Small,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Count regions by one or all methods, with an agreement verdict
    Count {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Enumerate or count the tree family of an arrangement
    Trees {
        #[command(flatten)]
        spec: SpecArgs,
        /// Enumerate the full tree set instead of the family
        #[arg(long)]
        all: bool,
        /// Include the serialized trees in the output
        #[arg(long)]
        list: bool,
    },
    /// Characteristic, coboundary, or Tutte polynomial
    Poly {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "characteristic")]
        kind: PolyKind,
    },
    /// Region or coboundary generating series to a truncation order
    Series {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 4)]
        trunc: u32,
        #[arg(long, value_enum, default_value = "regions")]
        kind: SeriesKind,
    },
    /// Tree-to-region map, parking labelings, the search-tree bijection, and
    /// round-trip audits
    Bijection {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum)]
        op: BijectionOp,
        /// Tree in parenthesized form, e.g. "(1 (2 . .) .)"
        #[arg(long)]
        tree: Option<String>,
    },
    /// Run the cross-check battery and exit 0 only if everything holds
    Verify {
        #[arg(long, value_enum, default_value = "small")]
        scale: Scale,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List gap/word configurations with widths and energies
    Configs {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Keep only zero-energy configurations
        #[arg(long)]
        zero_energy: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests are not usage errors
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn configure_jobs(jobs: usize) -> Result<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build_global()
        .context("thread pool already configured")
}

fn run(cli: Cli) -> Result<ExitCode> {
    configure_jobs(cli.jobs)?;
    match cli.command {
        Command::Count {
            spec,
            method,
            format,
        } => cmd_count(&spec.load()?, method, format),
        Command::Trees { spec, all, list } => cmd_trees(&spec.load()?, all, list),
        Command::Poly { spec, kind } => cmd_poly(&spec.load()?, kind),
        Command::Series { spec, trunc, kind } => cmd_series(&spec.load()?, trunc, kind),
        Command::Bijection { spec, op, tree } => cmd_bijection(&spec.load()?, op, tree.as_deref()),
        Command::Verify { scale, seed } => cmd_verify(scale, seed),
        Command::Configs {
            spec,
            size,
            zero_energy,
        } => cmd_configs(&spec.load()?, size, zero_energy),
    }
}

fn bigint_value(v: &BigInt) -> Value {
    match i64::try_from(v.clone()) {
        Ok(small) => json!(small),
        Err(_) => Value::String(v.to_string()),
    }
}

fn cmd_count(spec: &DeformationSpec, method: Method, format: Format) -> Result<ExitCode> {
    let mut entries: Vec<(&str, Option<BigInt>)> = Vec::new();
    let want = |m: Method| method == m || method == Method::All;
    if want(Method::Signed) {
        entries.push(("signed", Some(count::signed_region_count(spec))));
    }
    if want(Method::Unsigned) {
        match count::unsigned_region_count(spec) {
            Ok(v) => entries.push(("unsigned", Some(v))),
            Err(err) if method == Method::All => {
                eprintln!("note: unsigned count unavailable: {err}");
                entries.push(("unsigned", None));
            }
            Err(err) => return Err(err.into()),
        }
    }
    if want(Method::Whitney) {
        entries.push(("whitney", Some(oracle::whitney_region_count(spec)?)));
    }
    if want(Method::Sketch) {
        let (count, _) = oracle::regions_by_sketch_enumeration(spec)?;
        entries.push(("sketch", Some(count)));
    }
    let values: Vec<&BigInt> = entries.iter().filter_map(|(_, v)| v.as_ref()).collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    match format {
        Format::Json => {
            let mut obj = Map::new();
            for (name, v) in &entries {
                obj.insert(
                    name.to_string(),
                    v.as_ref().map(bigint_value).unwrap_or(Value::Null),
                );
            }
            if method == Method::All {
                obj.insert("agree".into(), json!(agree));
            }
            println!("{}", Value::Object(obj));
        }
        Format::Csv => {
            println!("method,value");
            for (name, v) in &entries {
                println!(
                    "{name},{}",
                    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
                );
            }
            if method == Method::All {
                println!("agree,{agree}");
            }
        }
    }
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_trees(spec: &DeformationSpec, all: bool, list: bool) -> Result<ExitCode> {
    let trees: Vec<PlaneTree> = if all {
        let labels: Vec<u32> = (1..=spec.nv() as u32).collect();
        tree::enumerate_trees(spec.max_offset() as usize + 1, &labels)
    } else {
        tree::enumerate_family(spec)
    };
    let mut obj = Map::new();
    obj.insert(
        "family".into(),
        json!(if all { "all" } else { "arrangement" }),
    );
    obj.insert("n".into(), json!(spec.nv()));
    obj.insert("count".into(), json!(trees.len()));
    if list {
        obj.insert(
            "trees".into(),
            Value::Array(trees.iter().map(|t| Value::String(t.to_string())).collect()),
        );
    }
    println!("{}", Value::Object(obj));
    Ok(ExitCode::SUCCESS)
}

fn cmd_poly(spec: &DeformationSpec, kind: PolyKind) -> Result<ExitCode> {
    let value = match kind {
        PolyKind::Characteristic => oracle::whitney_characteristic(spec)?.to_json("q", "y"),
        PolyKind::Coboundary => oracle::whitney_coboundary(spec)?.to_json("q", "y"),
        PolyKind::Tutte => {
            let p = oracle::whitney_coboundary(spec)?;
            tutte_from_coboundary(&p, spec.rank())?.to_json("x", "y")
        }
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn monomial_key(expo: &[u32]) -> String {
    let parts: Vec<String> = expo
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| format!("t{}^{}", i + 1, e))
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

fn coeff_value(poly: &PolyRat) -> Result<Value> {
    if let Some(c) = poly.as_constant() {
        return Ok(Value::String(c.to_string()));
    }
    // polynomials in q and y nest as their own object
    if !poly.uses_only(&[Var::Q, Var::Y]) {
        bail!("coefficient uses unexpected variables");
    }
    let mut obj = Map::new();
    for (mono, c) in poly.terms() {
        obj.insert(
            format!("q^{} y^{}", mono[Var::Q.idx()], mono[Var::Y.idx()]),
            Value::String(c.to_string()),
        );
    }
    Ok(Value::Object(obj))
}

fn series_to_json(series: &ExpSeries) -> Result<Value> {
    let mut coeffs = Map::new();
    for (expo, poly) in series.terms() {
        coeffs.insert(monomial_key(expo), coeff_value(poly)?);
    }
    Ok(json!({ "trunc": series.trunc(), "coeffs": Value::Object(coeffs) }))
}

fn cmd_series(spec: &DeformationSpec, trunc: u32, kind: SeriesKind) -> Result<ExitCode> {
    let series = match kind {
        SeriesKind::Regions => genfun::solve_region_gf(spec, trunc)?,
        SeriesKind::Coboundary => genfun::solve_coboundary_gf(spec, trunc)?.1,
    };
    println!("{}", series_to_json(&series)?);
    Ok(ExitCode::SUCCESS)
}

fn sign_str(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

fn cmd_bijection(
    spec: &DeformationSpec,
    op: BijectionOp,
    tree_text: Option<&str>,
) -> Result<ExitCode> {
    let need_tree = || -> Result<PlaneTree> {
        let text = tree_text.ok_or_else(|| anyhow!("--tree is required for this operation"))?;
        Ok(PlaneTree::parse(text)?)
    };
    match op {
        BijectionOp::TreeRegion => {
            let t = need_tree()?;
            let region = biject::region_of_tree(spec, &t)?;
            let mut obj = Map::new();
            for (h, sign) in &region.signs {
                obj.insert(
                    format!("{},{},{}", h.u + 1, h.v + 1, h.s),
                    Value::String(sign_str(*sign).into()),
                );
            }
            let feasible = is_feasible(spec, &region)?;
            println!(
                "{}",
                json!({ "tree": t.to_string(), "region": Value::Object(obj), "feasible": feasible })
            );
        }
        BijectionOp::Parking => {
            let t = need_tree()?;
            let pak = biject::pak_stanley(&t)?;
            let al = biject::athanasiadis_linusson(&t)?;
            println!(
                "{}",
                json!({ "tree": t.to_string(), "pak_stanley": pak, "athanasiadis_linusson": al })
            );
        }
        BijectionOp::Theta => {
            let t = need_tree()?;
            let img = biject::theta(&t)?;
            println!(
                "{}",
                json!({ "tree": t.to_string(), "theta": img.to_string() })
            );
        }
        BijectionOp::Audit => {
            let m = spec.max_offset() as usize;
            let n = spec.nv();
            let labels: Vec<u32> = (1..=n as u32).collect();
            let mut phi_psi = true;
            tree::for_each_tree(m + 1, &labels, |t| {
                let w = biject::psi(&t).unwrap();
                phi_psi &= biject::phi(&w).map(|back| back == t).unwrap_or(false);
            });
            let mut sigma_rep = true;
            let mut sketches = 0usize;
            for w in sketch::enumerate_sketches(m, n) {
                sketches += 1;
                let ok = sketch::representative_point(&w)
                    .and_then(|x| sketch::sigma(&x, m))
                    .map(|back| back == w)
                    .unwrap_or(false);
                sigma_rep &= ok;
            }
            println!(
                "{}",
                json!({ "m": m, "n": n, "sketches": sketches,
                        "phi_psi_round_trip": phi_psi,
                        "sigma_representative_round_trip": sigma_rep })
            );
            if !(phi_psi && sigma_rep) {
                return Ok(ExitCode::from(2));
            }
        }
        BijectionOp::MovesAudit => {
            let report = biject::maximality_audit(spec)?;
            println!(
                "{}",
                json!({
                    "sketches": report.sketches,
                    "classes": report.classes,
                    "regions": report.regions,
                    "locally_maximal": report.locally_maximal,
                    "family_size": report.family_size,
                    "classes_match_regions": report.classes_match_regions,
                    "maxima_locally_maximal": report.maxima_locally_maximal,
                    "locally_maximal_equals_maximal": report.locally_maximal_equals_maximal,
                    "locally_maximal_matches_family": report.locally_maximal_matches_family,
                })
            );
            if !(report.classes_match_regions && report.maxima_locally_maximal) {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_configs(spec: &DeformationSpec, size: usize, zero_energy: bool) -> Result<ExitCode> {
    let m = spec.max_offset();
    let configs = genfun::enumerate_configs(m, spec.n_types(), size);
    let mut rows = Vec::new();
    for c in &configs {
        let energy = c.energy(spec);
        if zero_energy && energy > 0 {
            continue;
        }
        rows.push(json!({
            "gaps": c.gaps,
            "word": c.word.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "width": c.width(m),
            "energy": energy,
        }));
    }
    println!(
        "{}",
        json!({ "m": m, "N": spec.n_types(), "size_bound": size,
                "count": rows.len(), "configs": rows })
    );
    Ok(ExitCode::SUCCESS)
}

struct Verifier {
    failures: usize,
    checks: usize,
}

impl Verifier {
    fn check(&mut self, name: &str, ok: bool) {
        self.checks += 1;
        if ok {
            println!("ok {name}");
        } else {
            self.failures += 1;
            println!("FAIL {name}");
        }
    }
}

type CountFormula = Box<dyn Fn(usize) -> u64>;

fn cmd_verify(scale: Scale, seed: u64) -> Result<ExitCode> {
    let full = scale == Scale::Full;
    let mut v = Verifier {
        failures: 0,
        checks: 0,
    };
    let max_n = if full { 5 } else { 4 };

    // classical four-way counts against their closed formulas
    let classical: Vec<(&str, Vec<i64>, CountFormula)> = vec![
        ("braid", vec![0], Box::new(|n| (1..=n as u64).product())),
        (
            "catalan",
            vec![-1, 0, 1],
            Box::new(|n| ((n as u64 + 2)..=(2 * n as u64)).product()),
        ),
        (
            "shi",
            vec![0, 1],
            Box::new(|n| ((n + 1) as u64).pow(n as u32 - 1)),
        ),
    ];
    for (name, s, formula) in &classical {
        for n in 1..=max_n {
            let spec = DeformationSpec::uniform(s, n);
            let signed = count::signed_region_count(&spec);
            let unsigned = count::unsigned_region_count(&spec).unwrap();
            let whitney = oracle::whitney_region_count(&spec).unwrap();
            let (sketches, _) = oracle::regions_by_sketch_enumeration(&spec).unwrap();
            let expected = BigInt::from(formula(n));
            let ok = signed == expected
                && unsigned == expected
                && whitney == expected
                && sketches == expected;
            v.check(&format!("{name} counts agree at n={n}"), ok);
        }
    }
    for (name, s) in [("linial", vec![1i64]), ("semiorder", vec![-1, 1])] {
        for n in 1..=(max_n - 1) {
            let spec = DeformationSpec::uniform(&s, n);
            let signed = count::signed_region_count(&spec);
            let unsigned = count::unsigned_region_count(&spec).unwrap();
            let whitney = oracle::whitney_region_count(&spec).unwrap();
            let (sketches, _) = oracle::regions_by_sketch_enumeration(&spec).unwrap();
            let ok = signed == unsigned && unsigned == whitney && whitney == sketches;
            v.check(&format!("{name} counts agree at n={n}"), ok);
        }
    }

    // round trips
    let shapes: &[(usize, usize)] = if full {
        &[(1, 4), (2, 3)]
    } else {
        &[(1, 3), (2, 2)]
    };
    for &(m, n) in shapes {
        let labels: Vec<u32> = (1..=n as u32).collect();
        let mut ok = true;
        tree::for_each_tree(m + 1, &labels, |t| {
            let w = biject::psi(&t).unwrap();
            ok &= biject::phi(&w).map(|b| b == t).unwrap_or(false);
            ok &= biject::phi_local(&w).map(|b| b == t).unwrap_or(false);
        });
        for w in sketch::enumerate_sketches(m, n) {
            ok &= sketch::representative_point(&w)
                .and_then(|x| sketch::sigma(&x, m))
                .map(|b| b == w)
                .unwrap_or(false);
        }
        v.check(&format!("round trips at m={m}, n={n}"), ok);
    }

    // tree-to-region audits at n = 3
    for (name, s, expected) in [
        ("catalan", vec![-1i64, 0, 1], 30u64),
        ("shi", vec![0, 1], 16),
        ("semiorder", vec![-1, 1], 19),
        ("linial", vec![1], 7),
    ] {
        let spec = DeformationSpec::uniform(&s, 3);
        let family = tree::enumerate_family(&spec);
        let mut regions = BTreeSet::new();
        let mut feasible = true;
        for t in &family {
            let r = biject::region_of_tree(&spec, t).unwrap();
            feasible &= is_feasible(&spec, &r) == Ok(true);
            regions.insert(r);
        }
        let (total, all) = oracle::regions_by_sketch_enumeration(&spec).unwrap();
        let ok = family.len() as u64 == expected
            && regions.len() as u64 == expected
            && total == BigInt::from(expected)
            && regions == all
            && feasible;
        v.check(&format!("{name} region bijection at n=3"), ok);
    }

    // finite-window identity
    let zmax = if full { 3 } else { 2 };
    let mut ok = true;
    for mask in 0..8u32 {
        let mut s = Vec::new();
        for (bit, val) in [(1, -1i64), (2, 0), (4, 1)] {
            if mask & bit != 0 {
                s.push(val);
            }
        }
        for n in 1..=zmax {
            ok &= count::z_identity_check(&DeformationSpec::uniform(&s, n)).unwrap();
        }
    }
    v.check("finite-window tuple identity", ok);

    // coboundary routes
    let cmax = if full { 4 } else { 3 };
    let mut ok = true;
    for mask in 0..8u32 {
        let mut s = Vec::new();
        for (bit, val) in [(1, -1i64), (2, 0), (4, 1)] {
            if mask & bit != 0 {
                s.push(val);
            }
        }
        for n in 0..=cmax {
            let spec = DeformationSpec::uniform(&s, n);
            let trees_route = count::coboundary_from_trees(&spec, n).unwrap();
            let whitney = oracle::whitney_coboundary(&spec).unwrap();
            ok &= trees_route[&vec![n]] == whitney;
        }
    }
    v.check("coboundary from trees equals the Whitney sum", ok);

    // the printed two-type series
    let sets = std::collections::BTreeMap::from([
        ((1, 1), vec![-2, -1, 0, 1, 2]),
        ((1, 2), vec![-1, 0, 1, 2]),
        ((2, 2), vec![-2, 0, 1, 2]),
    ]);
    let two_type = DeformationSpec::tuple(2, sets).unwrap();
    let r = genfun::solve_region_gf(&two_type, 3).unwrap();
    let ok = r.egf_coeff(&[2, 1]) == PolyRat::from_int(2 * 28)
        && r.egf_coeff(&[0, 3]) == PolyRat::from_int(51)
        && r.egf_coeff(&[1, 1]) == PolyRat::from_int(5);
    v.check("two-type series coefficients", ok);

    // offset-zero specialization on a triangle
    let spec = DeformationSpec::uniform(&[0], 3);
    let edges = [(0usize, 1usize), (0, 2), (1, 2)];
    let ok = oracle::potts_partition(3, &edges).unwrap()
        == oracle::whitney_coboundary(&spec).unwrap()
        && oracle::acyclic_orientations(3, &edges).unwrap() == BigInt::from(6);
    v.check("potts and acyclic orientations on the triangle", ok);

    // eulerian series
    v.check(
        "eulerian series",
        genfun::check_eulerian(if full { 7 } else { 5 }).unwrap(),
    );

    // identity suite for the full interval and the positive interval
    for s in [vec![-1i64, 0, 1], vec![0, 1]] {
        let report = genfun::identity_suite_uniform(&s, if full { 6 } else { 5 }).unwrap();
        v.check(&format!("identity suite for {s:?}"), report.all_hold());
    }

    // move classes
    let report = biject::maximality_audit(&DeformationSpec::uniform(&[1], 3)).unwrap();
    v.check(
        "move classes of the linial arrangement",
        report.classes == 7
            && report.classes_match_regions
            && report.locally_maximal_equals_maximal,
    );

    // random serialization fixtures
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..1000 {
        let arity = rng.gen_range(1..=3);
        let n = rng.gen_range(0..=6u32);
        let labels: Vec<u32> = (1..=n).collect();
        let t = tree::random_tree(arity, &labels, &mut rng);
        ok &= PlaneTree::parse(&t.to_string())
            .map(|b| b.to_string() == t.to_string())
            .unwrap_or(false);
    }
    v.check("random tree serialization round trips", ok);

    // rank formula on degenerate shapes
    let ok = DeformationSpec::uniform(&[0], 4).rank() == 3
        && DeformationSpec::uniform(&[], 4).rank() == 0;
    v.check("rank evaluation", ok);

    // bounded regions via the characteristic polynomial
    let braid = DeformationSpec::uniform(&[0], 3);
    let chi = oracle::whitney_characteristic(&braid).unwrap();
    let (regions, bounded) = zaslavsky(&chi, 3, braid.rank()).unwrap();
    v.check(
        "zaslavsky evaluations",
        regions == BigInt::from(6) && bounded == BigInt::zero(),
    );

    println!(
        "{}",
        json!({ "scale": if full { "full" } else { "small" },
                "checks": v.checks, "failures": v.failures })
    );
    Ok(if v.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
