//! Annotated sketches: words recording the interleaving of the shifted
//! coordinates `x_i + s` for `0 <= s <= m`, which encode the regions of the
//! full `[-m..m]` arrangement. Moves swapping adjacent letter pairs correspond
//! to crossing a single hyperplane.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};
use crate::polyrat::rat;
use crate::spec::DeformationSpec;

/// The letter `a<label>^<level>` of a sketch alphabet.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub label: u32,
    pub level: u32,
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}^{}", self.label, self.level)
    }
}

/// A word of `(m+1) n` distinct letters satisfying the sketch conditions:
/// every letter of the alphabet appears once, levels of a label appear in
/// order, and earlier letters keep their successors earlier.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AnnotatedSketch {
    m: usize,
    n: usize,
    letters: Vec<Letter>,
}

impl fmt::Debug for AnnotatedSketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AnnotatedSketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("a{}^{}", l.label, l.level))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl AnnotatedSketch {
    pub fn new(m: usize, n: usize, letters: Vec<Letter>) -> Result<Self> {
        let sketch = AnnotatedSketch { m, n, letters };
        sketch.validate()?;
        Ok(sketch)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn position(&self, label: u32, level: u32) -> Option<usize> {
        self.letters
            .iter()
            .position(|l| l.label == label && l.level == level)
    }

    fn validate(&self) -> Result<()> {
        let expected = (self.m + 1) * self.n;
        if self.letters.len() != expected {
            return Err(Error::InvalidSketch(format!(
                "expected {expected} letters, found {}",
                self.letters.len()
            )));
        }
        let mut pos = vec![vec![usize::MAX; self.m + 1]; self.n];
        for (p, l) in self.letters.iter().enumerate() {
            if l.label == 0 || l.label as usize > self.n || l.level as usize > self.m {
                return Err(Error::InvalidSketch(format!(
                    "letter {l:?} outside the alphabet"
                )));
            }
            let slot = &mut pos[l.label as usize - 1][l.level as usize];
            if *slot != usize::MAX {
                return Err(Error::InvalidSketch(format!("letter {l:?} repeated")));
            }
            *slot = p;
        }
        for (i, row) in pos.iter().enumerate() {
            for s in 1..=self.m {
                if row[s - 1] > row[s] {
                    return Err(Error::InvalidSketch(format!(
                        "levels of label {} out of order",
                        i + 1
                    )));
                }
            }
        }
        for i in 0..self.n {
            for j in 0..self.n {
                for s in 1..=self.m {
                    for t in 1..=self.m {
                        if pos[i][s - 1] < pos[j][t - 1] && pos[i][s] > pos[j][t] {
                            return Err(Error::InvalidSketch(format!(
                                "letters a{}^{} and a{}^{} cross",
                                i + 1,
                                s,
                                j + 1,
                                t
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<AnnotatedSketch> {
        let mut letters = Vec::new();
        let mut max_label = 0u32;
        let mut max_level = 0u32;
        for tok in text.split_whitespace() {
            let rest = tok
                .strip_prefix('a')
                .ok_or_else(|| Error::Parse(format!("bad letter {tok}")))?;
            let (label, level) = rest
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("bad letter {tok}")))?;
            let label: u32 = label
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok}")))?;
            let level: u32 = level
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok}")))?;
            max_label = max_label.max(label);
            max_level = max_level.max(level);
            letters.push(Letter { label, level });
        }
        AnnotatedSketch::new(max_level as usize, max_label as usize, letters)
    }
}

/// Alphabet precedence: higher level first, then smaller label.
pub fn letter_precedes(a: &Letter, b: &Letter) -> bool {
    (std::cmp::Reverse(a.level), a.label) < (std::cmp::Reverse(b.level), b.label)
}

/// Lexicographic comparison of sketches under the alphabet precedence.
pub fn precedence_cmp(a: &AnnotatedSketch, b: &AnnotatedSketch) -> Ordering {
    for (la, lb) in a.letters.iter().zip(&b.letters) {
        if la != lb {
            return if letter_precedes(la, lb) {
                Ordering::Less
            } else {
                Ordering::Greater
            };
        }
    }
    Ordering::Equal
}

/// Every annotated sketch with `n` labels and levels `0..=m`, in a
/// deterministic order.
pub fn enumerate_sketches(m: usize, n: usize) -> Vec<AnnotatedSketch> {
    let mut out = Vec::new();
    let mut letters: Vec<Letter> = Vec::with_capacity((m + 1) * n);
    let mut used = vec![false; n];
    // active letters in position order; placing a low-level letter consumes
    // the front and re-enqueues its successor
    let mut queue: std::collections::VecDeque<Letter> = std::collections::VecDeque::new();
    fn rec(
        m: usize,
        n: usize,
        letters: &mut Vec<Letter>,
        used: &mut Vec<bool>,
        queue: &mut std::collections::VecDeque<Letter>,
        out: &mut Vec<AnnotatedSketch>,
    ) {
        if letters.len() == (m + 1) * n {
            out.push(AnnotatedSketch {
                m,
                n,
                letters: letters.clone(),
            });
            return;
        }
        for label in 0..n {
            if used[label] {
                continue;
            }
            used[label] = true;
            let letter = Letter {
                label: label as u32 + 1,
                level: 0,
            };
            letters.push(letter);
            if m > 0 {
                queue.push_back(letter);
            }
            rec(m, n, letters, used, queue, out);
            if m > 0 {
                queue.pop_back();
            }
            letters.pop();
            used[label] = false;
        }
        if let Some(front) = queue.pop_front() {
            let next = Letter {
                label: front.label,
                level: front.level + 1,
            };
            letters.push(next);
            let re_enqueued = (next.level as usize) < m;
            if re_enqueued {
                queue.push_back(next);
            }
            rec(m, n, letters, used, queue, out);
            if re_enqueued {
                queue.pop_back();
            }
            letters.pop();
            queue.push_front(front);
        }
    }
    rec(m, n, &mut letters, &mut used, &mut queue, &mut out);
    out
}

/// Sorts the shifted values `x_i + s` into an annotated sketch; the values
/// must be pairwise distinct.
pub fn sigma(point: &[BigRational], m: usize) -> Result<AnnotatedSketch> {
    let n = point.len();
    let mut entries: Vec<(BigRational, u32, u32)> = Vec::with_capacity((m + 1) * n);
    for (i, x) in point.iter().enumerate() {
        for s in 0..=m {
            entries.push((
                x + BigRational::from_integer(BigInt::from(s as i64)),
                i as u32 + 1,
                s as u32,
            ));
        }
    }
    entries.sort_by(|a, b| (&a.0, a.1, a.2).cmp(&(&b.0, b.1, b.2)));
    for w in entries.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::Collision {
                i: w[0].1,
                s: w[0].2,
                j: w[1].1,
                t: w[1].2,
            });
        }
    }
    let letters = entries
        .into_iter()
        .map(|(_, label, level)| Letter { label, level })
        .collect();
    AnnotatedSketch::new(m, n, letters)
}

/// A rational point whose sketch is the given one. The scan starts at zero
/// and walks the word left to right: a letter with a positive level lands at
/// its forced value (coordinate plus level), while a level-zero letter
/// advances towards the next forced value by a `1/(n+1)` fraction of the
/// remaining room (a plain `1/(n+1)` step when nothing is pending), then pins
/// its coordinate. Stepping by a fraction of the room keeps every assignment
/// strictly below the forced values still to come, so the scan never collides.
pub fn representative_point(sketch: &AnnotatedSketch) -> Result<Vec<BigRational>> {
    sketch.validate()?;
    let n = sketch.n();
    let m = sketch.m();
    let frac = rat(1, n as i64 + 1);
    let mut z = BigRational::zero();
    let mut x: Vec<Option<BigRational>> = vec![None; n];
    // active letters in position order; the front's successor is the next
    // forced value of the scan
    let mut queue: std::collections::VecDeque<Letter> = std::collections::VecDeque::new();
    for l in sketch.letters() {
        if l.level == 0 {
            let step = match queue.front() {
                Some(front) => {
                    let base = x[front.label as usize - 1]
                        .clone()
                        .ok_or_else(|| Error::InvalidSketch("active letter without base".into()))?;
                    let forced =
                        base + BigRational::from_integer(BigInt::from(front.level as i64 + 1));
                    (forced - &z) * &frac
                }
                None => frac.clone(),
            };
            z += step;
            x[l.label as usize - 1] = Some(z.clone());
            if m > 0 {
                queue.push_back(*l);
            }
        } else {
            let base = x[l.label as usize - 1]
                .clone()
                .ok_or_else(|| Error::InvalidSketch("level before base letter".into()))?;
            z = base + BigRational::from_integer(BigInt::from(l.level as i64));
            let front = queue
                .pop_front()
                .ok_or_else(|| Error::InvalidSketch("no active letter to advance".into()))?;
            if front.label != l.label || front.level + 1 != l.level {
                return Err(Error::InvalidSketch(
                    "letter out of annotation order".into(),
                ));
            }
            if (l.level as usize) < m {
                queue.push_back(*l);
            }
        }
    }
    x.into_iter()
        .map(|v| v.ok_or_else(|| Error::InvalidSketch("missing coordinate".into())))
        .collect()
}

/// The swap pattern for crossing the hyperplane `x_i - x_j = s` (indices
/// `i < j`, offset `s` in `[-m..m]`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SketchMove {
    pub i: u32,
    pub j: u32,
    pub s: i64,
}

/// Applies a move when every required letter pair is consecutive; each pair
/// `{a_i^k, a_j^{s+k}}` for `k` in `[0..m] ∩ [-s..m-s]` is swapped.
pub fn apply_move(sketch: &AnnotatedSketch, mv: &SketchMove) -> Result<AnnotatedSketch> {
    let m = sketch.m() as i64;
    if mv.i >= mv.j || mv.s.abs() > m || mv.i == 0 || mv.j as usize > sketch.n() {
        return Err(Error::NotApplicable);
    }
    let lo = 0.max(-mv.s);
    let hi = m.min(m - mv.s);
    let mut swaps = Vec::new();
    for k in lo..=hi {
        let p = sketch
            .position(mv.i, k as u32)
            .ok_or(Error::NotApplicable)?;
        let q = sketch
            .position(mv.j, (mv.s + k) as u32)
            .ok_or(Error::NotApplicable)?;
        if p.abs_diff(q) != 1 {
            return Err(Error::NotApplicable);
        }
        swaps.push((p.min(q), p.max(q)));
    }
    let mut letters = sketch.letters().to_vec();
    for (p, q) in swaps {
        letters.swap(p, q);
    }
    AnnotatedSketch::new(sketch.m(), sketch.n(), letters).map_err(|_| Error::NotApplicable)
}

/// All moves available to an arrangement: offsets absent from the pair's set.
pub fn spec_moves(spec: &DeformationSpec) -> Vec<SketchMove> {
    let n = spec.nv();
    let m = spec.max_offset();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let set = spec.offsets_by_vertex(i, j);
            for s in -m..=m {
                if !set.contains(&s) {
                    out.push(SketchMove {
                        i: i as u32 + 1,
                        j: j as u32 + 1,
                        s,
                    });
                }
            }
        }
    }
    out
}

/// No available move produces a lexicographically larger sketch.
pub fn is_locally_maximal(spec: &DeformationSpec, sketch: &AnnotatedSketch) -> bool {
    for mv in spec_moves(spec) {
        if let Ok(next) = apply_move(sketch, &mv) {
            if precedence_cmp(sketch, &next) == Ordering::Less {
                return false;
            }
        }
    }
    true
}
