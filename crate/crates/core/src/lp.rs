//! Exact simplex for `max c·y  s.t.  A y <= b, y >= 0` with integer data and
//! `b >= 0`, so the slack basis is an initial feasible basis.
//!
//! The tableau is kept fraction-free: every entry is an integer equal to
//! the true rational value times the current pivot denominator, and each
//! pivot divides exactly by the previous one. Arithmetic runs on checked
//! `i128` and restarts on `BigInt` if an intermediate overflows.
//! Entering and leaving variables follow Bland's rule.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// Optimal values of the structural variables.
    pub primal: Vec<Rational>,
    /// Optimal dual prices, one per constraint row.
    pub dual: Vec<Rational>,
    pub pivots: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Unbounded,
}

trait Entry: Clone + Sized {
    fn from_i64(v: i64) -> Self;
    fn signum_i(&self) -> i32;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn big(&self) -> BigInt;
}

impl Entry for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn signum_i(&self) -> i32 {
        self.signum() as i32
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn signum_i(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!((self % o).is_zero());
        self / o
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

/// `None` signals arithmetic overflow in the chosen entry type.
fn solve_with<T: Entry>(
    a: &[Vec<i64>],
    b: &[i64],
    c: &[i64],
    budget: &mut Budget,
) -> Result<Option<LpOutcome>> {
    let m = a.len();
    let nv = c.len();
    let width = nv + m + 1;
    let rhs = nv + m;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row: Vec<T> = a[i].iter().map(|&x| T::from_i64(x)).collect();
        row.extend((0..m).map(|k| T::from_i64((k == i) as i64)));
        row.push(T::from_i64(b[i]));
        t.push(row);
    }
    let mut obj: Vec<T> = c.iter().map(|&x| T::from_i64(-x)).collect();
    obj.extend((0..=m).map(|_| T::from_i64(0)));
    t.push(obj);
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    let mut d = T::from_i64(1);
    let mut pivots = 0u64;

    while let Some(col) = (0..rhs).find(|&j| t[m][j].signum_i() < 0) {
        // Ratio test: minimise rhs_i / t_i,col over positive entries;
        // ties go to the smallest basic variable index.
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][col].signum_i() <= 0 {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(k) => {
                    let lhs = match t[i][rhs].mul(&t[k][col]) {
                        Some(x) => x,
                        None => return Ok(None),
                    };
                    let rhs_v = match t[k][rhs].mul(&t[i][col]) {
                        Some(x) => x,
                        None => return Ok(None),
                    };
                    let diff = match lhs.sub(&rhs_v) {
                        Some(x) => x,
                        None => return Ok(None),
                    };
                    match diff.signum_i() {
                        s if s < 0 => Some(i),
                        0 if basis[i] < basis[k] => Some(i),
                        _ => Some(k),
                    }
                }
            };
        }
        let Some(r) = leave else {
            return Ok(Some(LpOutcome::Unbounded));
        };
        budget.tick()?;
        pivots += 1;
        let p = t[r][col].clone();
        for i in 0..=m {
            if i == r {
                continue;
            }
            let f = t[i][col].clone();
            // rows i and r are both read, so index rather than iterate
            #[allow(clippy::needless_range_loop)]
            for j in 0..width {
                let x = match t[i][j].mul(&p) {
                    Some(x) => x,
                    None => return Ok(None),
                };
                let y = if f.signum_i() == 0 {
                    T::from_i64(0)
                } else {
                    match f.mul(&t[r][j]) {
                        Some(y) => y,
                        None => return Ok(None),
                    }
                };
                let z = match x.sub(&y) {
                    Some(z) => z,
                    None => return Ok(None),
                };
                t[i][j] = z.div_exact(&d);
            }
        }
        d = p;
        basis[r] = col;
    }

    let den = d.big();
    let q = |x: &T| Rational::new(x.big(), den.clone());
    let mut primal = vec![Rational::zero(); nv];
    for (i, &v) in basis.iter().enumerate() {
        if v < nv {
            primal[v] = q(&t[i][rhs]);
        }
    }
    let dual = (0..m).map(|i| q(&t[m][nv + i])).collect();
    Ok(Some(LpOutcome::Optimal(LpSolution {
        value: q(&t[m][rhs]),
        primal,
        dual,
        pivots,
    })))
}

/// Solves `max c·y` subject to `A y <= b`, `y >= 0`. Requires `b >= 0`.
pub fn maximize(a: &[Vec<i64>], b: &[i64], c: &[i64], budget: &mut Budget) -> Result<LpOutcome> {
    if a.len() != b.len() {
        return Err(Error::InvalidGraph(format!(
            "constraint matrix has {} rows but {} right-hand sides",
            a.len(),
            b.len()
        )));
    }
    if let Some(row) = a.iter().find(|r| r.len() != c.len()) {
        return Err(Error::InvalidGraph(format!(
            "row of length {} for {} variables",
            row.len(),
            c.len()
        )));
    }
    if b.iter().any(|&x| x < 0) {
        return Err(Error::InvalidGraph("negative right-hand side".into()));
    }
    if let Some(out) = solve_with::<i128>(a, b, c, budget)? {
        return Ok(out);
    }
    Ok(solve_with::<BigInt>(a, b, c, budget)?.expect("BigInt arithmetic cannot overflow"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn opt(a: &[Vec<i64>], b: &[i64], c: &[i64]) -> LpSolution {
        let mut budget = Budget::new(10_000, "test");
        match maximize(a, b, c, &mut budget).unwrap() {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Unbounded => panic!("unbounded"),
        }
    }

    #[test]
    fn small_textbook() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let s = opt(&[vec![1, 0], vec![0, 2], vec![3, 2]], &[4, 12, 18], &[3, 5]);
        assert_eq!(s.value, int(36));
        assert_eq!(s.primal, vec![int(2), int(6)]);
        // strong duality
        let dual_obj: Rational = s.dual.iter().zip([4, 12, 18]).map(|(y, b)| y * int(b)).sum();
        assert_eq!(dual_obj, int(36));
        assert_eq!(s.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn fractional_optimum() {
        // C5 clique constraints: y_i + y_{i+1} <= 1 -> 5/2
        let a: Vec<Vec<i64>> = (0..5)
            .map(|i| (0..5).map(|j| (j == i || j == (i + 1) % 5) as i64).collect())
            .collect();
        let s = opt(&a, &[1; 5], &[1; 5]);
        assert_eq!(s.value, ratio(5, 2));
    }

    #[test]
    fn unbounded_detected() {
        let mut budget = Budget::new(100, "test");
        let out = maximize(&[vec![1, -1]], &[1], &[0, 1], &mut budget).unwrap();
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_does_not_cycle() {
        // Beale's cycling example (in max form).
        let a = vec![
            vec![1, -4 * 8, -9, 4 * 9 * 8 / 8, 0],
            vec![1, -12, -3, 4 * 3, 0],
            vec![0, 0, 1, 0, 1],
        ];
        let mut budget = Budget::new(1000, "test");
        assert!(maximize(&a, &[0, 0, 1], &[3, -20, 1, -6, 0], &mut budget).is_ok());
    }

    #[test]
    fn big_fallback_agrees() {
        let big = 1i64 << 40;
        let s = opt(&[vec![big, big - 1], vec![big - 3, big]], &[big, big], &[1, 1]);
        let mut budget = Budget::new(100, "test");
        let b = solve_with::<BigInt>(
            &[vec![big, big - 1], vec![big - 3, big]],
            &[big, big],
            &[1, 1],
            &mut budget,
        )
        .unwrap()
        .unwrap();
        assert_eq!(LpOutcome::Optimal(s.clone()), b);
    }
}
