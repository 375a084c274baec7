use dist_core::RngStream;
use weight_engine::{cascade, sample_weight_field, Cascade, ParamSet, WeightField};

use crate::{AztecError, Dir, Matching};

const EXACT_GUARD: usize = 3;

/// A level-`n` matching with holes left by destruction and sliding.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialMatching {
    pub n: usize,
    pub dir: Vec<Option<Dir>>,
}

impl PartialMatching {
    fn get(&self, l: usize, k: usize) -> Option<Dir> {
        self.dir[Matching::index(self.n, l, k)]
    }

    fn set(&mut self, l: usize, k: usize, d: Dir) {
        let slot = &mut self.dir[Matching::index(self.n, l, k)];
        assert!(slot.is_none(), "w({l},{k}) filled twice");
        *slot = Some(d);
    }
}

/// Destruction of blocking pairs followed by the slide to level `k + 1`.
pub fn destroy_and_slide(m: &Matching) -> PartialMatching {
    let k = m.n;
    let mut keep = vec![true; m.dir.len()];
    for l in 1..k {
        for r in 2..=k {
            let (left, right) = (m.get(l, r), m.get(l + 1, r));
            let blocked = matches!((left, right), (Dir::UR, Dir::DL) | (Dir::DR, Dir::UL));
            if blocked {
                keep[Matching::index(k, l, r)] = false;
                keep[Matching::index(k, l + 1, r)] = false;
            }
        }
    }
    let next = k + 1;
    let mut out = PartialMatching {
        n: next,
        dir: vec![None; next * (next + 1)],
    };
    for l in 1..=k {
        for r in 1..=k + 1 {
            if !keep[Matching::index(k, l, r)] {
                continue;
            }
            let d = m.get(l, r);
            let (l2, r2) = match d {
                Dir::DL => (l, r),
                Dir::UL => (l, r + 1),
                Dir::DR => (l + 1, r),
                Dir::UR => (l + 1, r + 1),
            };
            out.set(l2, r2, d);
        }
    }
    out
}

/// Empty even faces `(i, j)`: both `w(i, j)` and `w(i, j+1)` unmatched.
pub fn empty_faces(p: &PartialMatching) -> Vec<(usize, usize)> {
    let n = p.n;
    let mut faces = Vec::new();
    for i in 1..=n {
        let mut j = 1;
        while j <= n {
            if p.get(i, j).is_none() {
                assert!(p.get(i, j + 1).is_none(), "lone hole at w({i},{})", j + 1);
                faces.push((i, j));
                j += 2;
            } else {
                j += 1;
            }
        }
        assert!(
            p.get(i, n + 1).is_some() || faces.iter().any(|&(a, b)| a == i && b == n),
            "unpaired hole at w({i},{})",
            n + 1
        );
    }
    faces
}

/// Fills each face: `true` places the a-edge pair (DL, UR), `false` the
/// b-edge pair (DR, UL).
pub fn fill_faces(p: &PartialMatching, faces: &[(usize, usize)], choices: &[bool]) -> Matching {
    assert_eq!(faces.len(), choices.len());
    let mut q = p.clone();
    for (&(i, j), &take_a) in faces.iter().zip(choices) {
        if take_a {
            q.set(i, j, Dir::DL);
            q.set(i, j + 1, Dir::UR);
        } else {
            q.set(i, j, Dir::DR);
            q.set(i, j + 1, Dir::UL);
        }
    }
    let dir = q
        .dir
        .into_iter()
        .map(|d| d.expect("all holes filled"))
        .collect();
    let m = Matching { n: p.n, dir };
    debug_assert!(m.is_valid());
    m
}

fn check_level(m: &Matching, w_next: &WeightField) -> Result<(), AztecError> {
    if w_next.level != m.n + 1 {
        return Err(AztecError::LevelMismatch {
            got: w_next.level,
            want: m.n + 1,
        });
    }
    Ok(())
}

/// One shuffle from level `k` to `k + 1` using the level-`k+1` weights.
pub fn shuffle_step(
    m: &Matching,
    w_next: &WeightField,
    rng: &mut RngStream,
) -> Result<Matching, AztecError> {
    check_level(m, w_next)?;
    Ok(step_unchecked(m, w_next, rng))
}

fn step_unchecked(m: &Matching, w_next: &WeightField, rng: &mut RngStream) -> Matching {
    let p = destroy_and_slide(m);
    let faces = empty_faces(&p);
    let choices: Vec<bool> = faces
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (w_next.a(i, j), w_next.b(i, j));
            rng.uniform() * (a + b) < a
        })
        .collect();
    fill_faces(&p, &faces, &choices)
}

/// Exact law of the next matching; a product over the empty faces.
pub fn shuffle_transition_distribution(
    m: &Matching,
    w_next: &WeightField,
) -> Result<Vec<(Matching, f64)>, AztecError> {
    if m.n > EXACT_GUARD {
        return Err(AztecError::TooLarge(m.n, EXACT_GUARD));
    }
    check_level(m, w_next)?;
    m.check()?;
    let p = destroy_and_slide(m);
    let faces = empty_faces(&p);
    let probs: Vec<f64> = faces
        .iter()
        .map(|&(i, j)| w_next.a(i, j) / (w_next.a(i, j) + w_next.b(i, j)))
        .collect();
    let f = faces.len();
    let mut out = Vec::with_capacity(1 << f);
    for mask in 0u32..(1u32 << f) {
        let choices: Vec<bool> = (0..f).map(|t| mask >> t & 1 == 1).collect();
        let pr: f64 = choices
            .iter()
            .zip(&probs)
            .map(|(&c, &q)| if c { q } else { 1.0 - q })
            .product();
        out.push((fill_faces(&p, &faces, &choices), pr));
    }
    Ok(out)
}

/// `M_1, ..., M_n` driven by the given cascade.
pub fn sample_trajectory_from_cascade(c: &Cascade, rng: &mut RngStream) -> Vec<Matching> {
    let mut out = Vec::with_capacity(c.n());
    let mut cur = Matching::empty();
    for k in 1..=c.n() {
        cur = step_unchecked(&cur, c.level(k), rng);
        out.push(cur.clone());
    }
    out
}

/// Final matching only, without keeping intermediate levels.
pub fn sample_final_matching(c: &Cascade, rng: &mut RngStream) -> Matching {
    let mut cur = Matching::empty();
    for k in 1..=c.n() {
        cur = step_unchecked(&cur, c.level(k), rng);
    }
    cur
}

/// Fresh Gamma field of size `n`, its cascade, and a shuffle trajectory.
pub fn sample_trajectory(
    params: &ParamSet,
    n: usize,
    rng: &mut RngStream,
) -> Result<(Cascade, Vec<Matching>), AztecError> {
    let w = sample_weight_field(params, n, rng)?;
    let c = cascade(&w);
    let traj = sample_trajectory_from_cascade(&c, rng);
    Ok((c, traj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::tests::reference_n3;

    #[test]
    fn reference_destruction_and_slide() {
        let m = reference_n3();
        let p = destroy_and_slide(&m);
        assert_eq!(p.n, 4);
        let holes = p.dir.iter().filter(|d| d.is_none()).count();
        assert_eq!(holes, 10);
        assert_eq!(empty_faces(&p).len(), 5);
        // the a_{3,2} edge at w(3,2) and the SE edge at w(2,2) are gone: their
        // slid images w(3,2) and w(3,3) are empty
        assert!(p.get(3, 2).is_none() && p.get(3, 3).is_none());
    }

    #[test]
    fn first_step_probabilities() {
        let w = WeightField::new(1, vec![3.0], vec![1.0]).unwrap();
        let d = shuffle_transition_distribution(&Matching::empty(), &w).unwrap();
        assert_eq!(d.len(), 2);
        let total: f64 = d.iter().map(|x| x.1).sum();
        assert!((total - 1.0).abs() < 1e-15);
        let nw = d.iter().find(|(m, _)| m.get(1, 1) == Dir::DL).unwrap();
        assert!((nw.1 - 0.75).abs() < 1e-15);
    }

    #[test]
    fn transition_normalized_and_guarded() {
        let w = WeightField::new(2, vec![1.0, 2.0, 0.5, 3.0], vec![2.0, 1.0, 1.0, 0.3]).unwrap();
        for m1 in [
            Matching::from_rows(&[vec![Dir::DL, Dir::UR]]).unwrap(),
            Matching::from_rows(&[vec![Dir::DR, Dir::UL]]).unwrap(),
        ] {
            let d = shuffle_transition_distribution(&m1, &w).unwrap();
            let total: f64 = d.iter().map(|x| x.1).sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!(d.iter().all(|(m, _)| m.is_valid()));
        }
        let w5 = WeightField::constant(5, 1.0, 1.0);
        let m4 = sample_final_matching(&cascade(&WeightField::constant(4, 1.0, 1.0)), &mut RngStream::new(0, 0));
        assert!(matches!(
            shuffle_transition_distribution(&m4, &w5),
            Err(AztecError::TooLarge(4, 3))
        ));
    }

    #[test]
    fn deterministic_given_choices() {
        let m = reference_n3();
        let p = destroy_and_slide(&m);
        let faces = empty_faces(&p);
        let ones = vec![true; faces.len()];
        assert_eq!(fill_faces(&p, &faces, &ones), fill_faces(&p, &faces, &ones));
        assert!(fill_faces(&p, &faces, &ones).is_valid());
    }

    #[test]
    fn trajectory_levels_are_valid() {
        let mut rng = RngStream::new(9, 0);
        let params = ParamSet::homogeneous(0.2, 0.25, 40).unwrap();
        let (c, traj) = sample_trajectory(&params, 40, &mut rng).unwrap();
        assert_eq!(c.n(), 40);
        for (k, m) in traj.iter().enumerate() {
            assert_eq!(m.n, k + 1);
            assert!(m.is_valid());
        }
    }
}
