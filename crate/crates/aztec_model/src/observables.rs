use crate::{AztecError, Dir, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TurningPoints {
    pub north: usize,
    pub east: usize,
    pub south: usize,
    pub west: usize,
}

pub fn turning_points(m: &Matching) -> Result<TurningPoints, AztecError> {
    m.check()?;
    let n = m.n;
    Ok(TurningPoints {
        north: (1..=n).filter(|&l| m.get(l, 1) == Dir::DL).count(),
        south: (1..=n).filter(|&l| m.get(l, n + 1) == Dir::UL).count(),
        west: (1..=n).filter(|&k| m.get(1, k) == Dir::DL).count(),
        east: (1..=n + 1).filter(|&k| n > 0 && m.get(n, k) == Dir::DR).count(),
    })
}

fn check_range(n: usize, l: usize) -> Result<(), AztecError> {
    if l == 0 || l > n {
        return Err(AztecError::Range { index: l, max: n });
    }
    Ok(())
}

/// Labels `k` of whites in column `l` matched to a black vertex on their left.
pub fn vertical_slice(m: &Matching, l: usize) -> Result<Vec<usize>, AztecError> {
    check_range(m.n, l)?;
    Ok((1..=m.n + 1)
        .filter(|&k| matches!(m.get(l, k), Dir::DL | Dir::UL))
        .collect())
}

/// Columns `i` of blacks in row `l` matched to a white vertex above them.
pub fn horizontal_slice(m: &Matching, l: usize) -> Result<Vec<usize>, AztecError> {
    check_range(m.n, l)?;
    Ok((1..=m.n + 1)
        .filter(|&i| (i <= m.n && m.get(i, l) == Dir::DL) || (i >= 2 && m.get(i - 1, l) == Dir::DR))
        .collect())
}
