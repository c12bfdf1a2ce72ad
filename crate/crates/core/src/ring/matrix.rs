//! Polynomial matrices and their exact determinants.
//!
//! Two independent routes are provided and cross-checked by [`poly_det`]:
//! Bareiss fraction-free elimination over the polynomial ring, and
//! evaluation on a product grid followed by tensor-product interpolation.

use std::fmt;
use std::time::{Duration, Instant};

use super::{EvalField, Field, GridEval, Monomial, MultiPoly, PolyRing};
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// A rectangular matrix of polynomials over one ring, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<F: Field> {
    ring: PolyRing<F>,
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: PolyRing<F>, rows: usize, cols: usize, entries: Vec<MultiPoly<F>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        assert!(entries.iter().all(|e| e.ring() == ring), "entry ring is not uniform");
        PolyMatrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(ring: PolyRing<F>, rows: usize, cols: usize, f: impl Fn(usize, usize) -> MultiPoly<F>) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::new(ring, rows, cols, entries)
    }

    pub fn identity(ring: PolyRing<F>, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> PolyRing<F> {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MultiPoly<F>] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        PolyMatrix::from_fn(self.ring, self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.cols {
                acc.add_assign(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn max_total_degree(&self) -> u64 {
        self.entries.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0)
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }
}

/// Limits on the fraction-free route. Exceeding them is reported, never
/// silently replaced.
#[derive(Clone, Debug)]
pub struct BareissBudget {
    pub max_entry_terms: usize,
    pub time_limit: Option<Duration>,
}

impl Default for BareissBudget {
    fn default() -> Self {
        BareissBudget {
            max_entry_terms: 20_000,
            time_limit: Some(Duration::from_secs(600)),
        }
    }
}

impl BareissBudget {
    pub fn unlimited() -> Self {
        BareissBudget {
            max_entry_terms: usize::MAX,
            time_limit: None,
        }
    }
}

/// Fraction-free (Bareiss) elimination with full pivoting on the sparsest
/// available entry.
pub fn det_fraction_free<F: Field>(m: &PolyMatrix<F>, budget: &BareissBudget, exec: Execution) -> Result<MultiPoly<F>> {
    let n = m.require_square()?;
    let ring = m.ring;
    if n == 0 {
        return Ok(ring.one());
    }
    let start = Instant::now();
    let mut a: Vec<Vec<MultiPoly<F>>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..n {
        // sparsest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize, (usize, u64))> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if e.is_zero() {
                    continue;
                }
                let key = (e.num_terms(), e.total_degree().unwrap_or(0));
                if best.as_ref().map_or(true, |b| key < b.2) {
                    best = Some((i, j, key));
                }
            }
        }
        let Some((pi, pj, _)) = best else {
            return Ok(ring.zero());
        };
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let pivot = a[k][k].clone();
        let pivot_row = a[k].clone();
        let updated: Vec<Result<Vec<MultiPoly<F>>>> = par::map_slice(exec, &a[k + 1..], |row| {
            let lead = &row[k];
            let mut out = Vec::with_capacity(n);
            for j in 0..n {
                if j <= k {
                    out.push(ring.zero());
                    continue;
                }
                let mut v = row[j].mul(&pivot);
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = v.sub(&lead.mul(&pivot_row[j]));
                }
                let v = v.exact_div(&prev)?;
                if v.num_terms() > budget.max_entry_terms {
                    return Err(Error::BudgetExceeded(format!(
                        "entry with {} terms at elimination step {k}",
                        v.num_terms()
                    )));
                }
                out.push(v);
            }
            Ok(out)
        });
        for (off, row) in updated.into_iter().enumerate() {
            a[k + 1 + off] = row?;
        }
        prev = pivot;
        if let Some(limit) = budget.time_limit {
            if start.elapsed() > limit {
                return Err(Error::BudgetExceeded(format!(
                    "time limit {:?} hit at elimination step {k} of {n}",
                    limit
                )));
            }
        }
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Rigorous per-variable degree bounds for det(m).
///
/// Every Leibniz term takes one entry from each row, so the degree of det in
/// z_v is at most the sum over rows of the row's largest z_v-degree; the
/// same holds for columns. The conservative bound
/// `dim × max total entry degree` caps both.
pub fn per_variable_degree_bounds<F: Field>(m: &PolyMatrix<F>) -> Vec<u64> {
    let nv = m.ring.nvars;
    let n = m.rows;
    let conservative = n as u64 * m.max_total_degree();
    (0..nv)
        .map(|v| {
            let deg = |i: usize, j: usize| m.get(i, j).degree_in(v).unwrap_or(0) as u64;
            let by_rows: u64 = (0..n).map(|i| (0..m.cols).map(|j| deg(i, j)).max().unwrap_or(0)).sum();
            let by_cols: u64 = (0..m.cols).map(|j| (0..n).map(|i| deg(i, j)).max().unwrap_or(0)).sum();
            by_rows.min(by_cols).min(conservative)
        })
        .collect()
}

fn field_det<E: EvalField>(field: &E, mut a: Vec<E::El>, n: usize) -> E::El {
    let mut det = field.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !field.is_zero(&a[i * n + k])) else {
            return field.zero();
        };
        if piv != k {
            for j in 0..n {
                a.swap(piv * n + j, k * n + j);
            }
            det = field.neg(&det);
        }
        let p = a[k * n + k].clone();
        det = field.mul(&det, &p);
        let pinv = field.inv(&p).expect("nonzero pivot");
        for i in k + 1..n {
            let f = field.mul(&a[i * n + k], &pinv);
            if field.is_zero(&f) {
                continue;
            }
            for j in k + 1..n {
                let t = field.mul(&f, &a[k * n + j]);
                a[i * n + j] = field.sub(&a[i * n + j], &t);
            }
        }
    }
    det
}

/// Rank of a dense matrix over a field.
pub fn field_rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for i in rank + 1..a.len() {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() * inv.clone();
            for j in col..ncols {
                let t = f.clone() * a[rank][j].clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a dense square matrix over a field, by Gauss–Jordan.
pub fn field_inverse<F: Field>(rows: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = rows.len();
    let desc = rows.first()?.first()?.desc();
    let mut a: Vec<Vec<F>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "square matrix expected");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { F::one(desc) } else { F::zero(desc) }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for j in 0..2 * n {
            a[col][j] = a[col][j].clone() * inv.clone();
        }
        for i in 0..n {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..2 * n {
                let t = f.clone() * a[col][j].clone();
                a[i][j] = a[i][j].clone() - t;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Monomial-basis coefficients of the polynomial of degree < len(xs)
/// through (xs[i], ys[i]), via Newton divided differences.
fn interpolate_1d<E: EvalField>(field: &E, xs: &[E::El], ys: &[E::El]) -> Vec<E::El> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = field.sub(&dd[i], &dd[i - 1]);
            let den = field.sub(&xs[i], &xs[i - level]);
            dd[i] = field.mul(&num, &field.inv(&den).expect("distinct grid points"));
        }
    }
    let mut coeffs = vec![field.zero(); n];
    coeffs[0] = dd[n - 1].clone();
    let mut len = 1;
    for j in (0..n - 1).rev() {
        // coeffs *= (t − xs[j]); coeffs[0] += dd[j]
        let mut next = vec![field.zero(); n];
        for d in 0..len {
            next[d + 1] = field.add(&next[d + 1], &coeffs[d]);
            let t = field.mul(&coeffs[d], &xs[j]);
            next[d] = field.sub(&next[d], &t);
        }
        len += 1;
        next[0] = field.add(&next[0], &dd[j]);
        coeffs = next;
    }
    coeffs
}

/// Evaluation at every point of a product grid whose side in z_v exceeds
/// the degree bound for z_v, then interpolation back to coefficients.
pub fn det_evaluation_grid<F: GridEval>(m: &PolyMatrix<F>, exec: Execution) -> Result<(MultiPoly<F>, Option<usize>)> {
    let n = m.require_square()?;
    let ring = m.ring;
    let bounds = per_variable_degree_bounds(m);
    let sides: Vec<usize> = bounds.iter().map(|&b| b as usize + 1).collect();
    let needed = sides.iter().copied().max().unwrap_or(1);
    let field = F::grid_field(ring.field, needed)?;
    let pts = field.points(needed);
    let total: usize = sides.iter().product();
    let max_deg: Vec<usize> = (0..ring.nvars)
        .map(|v| m.entries.iter().filter_map(|e| e.degree_in(v)).max().unwrap_or(0) as usize)
        .collect();

    let values: Vec<E<F>> = par::map_range(exec, total, |flat| {
        let mut rem = flat;
        let mut idx = vec![0usize; sides.len()];
        for v in (0..sides.len()).rev() {
            idx[v] = rem % sides[v];
            rem /= sides[v];
        }
        let powers: Vec<Vec<_>> = idx
            .iter()
            .enumerate()
            .map(|(v, &i)| {
                let mut pw = Vec::with_capacity(max_deg[v] + 1);
                pw.push(field.one());
                for e in 1..=max_deg[v] {
                    let next = field.mul(&pw[e - 1], &pts[i]);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let a: Vec<_> = m.entries.iter().map(|e| e.evaluate_with_powers(&field, &powers)).collect();
        field_det(&field, a, n)
    });

    // Tensor-product interpolation, one axis at a time.
    let mut coeffs = values;
    let mut stride = total;
    for &side in &sides {
        stride /= side;
        let xs = &pts[..side];
        let block = side * stride;
        let mut next = coeffs.clone();
        for base in (0..total).step_by(block) {
            for off in 0..stride {
                let ys: Vec<_> = (0..side).map(|t| coeffs[base + off + t * stride].clone()).collect();
                let cs = interpolate_1d(&field, xs, &ys);
                for (t, c) in cs.into_iter().enumerate() {
                    next[base + off + t * stride] = c;
                }
            }
        }
        coeffs = next;
    }

    let mut det = ring.zero();
    for (flat, c) in coeffs.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let mut rem = flat;
        let mut exps = vec![0u32; sides.len()];
        for v in (0..sides.len()).rev() {
            exps[v] = (rem % sides[v]) as u32;
            rem /= sides[v];
        }
        let base = field.restrict(c).ok_or_else(|| {
            Error::CertificateFailed("interpolated determinant coefficient outside the base field".into())
        })?;
        det.add_term(Monomial::from_slice(&exps), base);
    }
    Ok((det, field.size_hint()))
}

type E<F> = <<F as GridEval>::Grid as EvalField>::El;

/// What one determinant route produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategyOutcome<F: Field> {
    Computed(MultiPoly<F>),
    BudgetExceeded(String),
    NotRun,
}

impl<F: Field> StrategyOutcome<F> {
    pub fn value(&self) -> Option<&MultiPoly<F>> {
        match self {
            StrategyOutcome::Computed(v) => Some(v),
            _ => None,
        }
    }
}

impl<F: Field> fmt::Display for StrategyOutcome<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrategyOutcome::Computed(v) => write!(f, "computed {v}"),
            StrategyOutcome::BudgetExceeded(why) => write!(f, "budget exceeded: {why}"),
            StrategyOutcome::NotRun => write!(f, "not run"),
        }
    }
}

/// Determinant together with a record of which routes ran.
#[derive(Clone, Debug)]
pub struct DetReport<F: Field> {
    pub value: MultiPoly<F>,
    pub fraction_free: StrategyOutcome<F>,
    pub grid: StrategyOutcome<F>,
    pub grid_field_size: Option<usize>,
    pub degree_bounds: Vec<u64>,
    pub fraction_free_ms: u128,
    pub grid_ms: u128,
}

impl<F: Field> DetReport<F> {
    /// Both routes ran and produced the same polynomial.
    pub fn strategies_agree(&self) -> bool {
        matches!((&self.fraction_free, &self.grid), (StrategyOutcome::Computed(a), StrategyOutcome::Computed(b)) if a == b)
    }

    pub fn strategies_run(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.fraction_free.value().is_some() {
            out.push("fraction-free");
        }
        if self.grid.value().is_some() {
            out.push("evaluation-grid");
        }
        out
    }
}

/// Runs the grid route (mandatory) and the fraction-free route (within
/// `budget`); errors if both complete and disagree.
pub fn det_with_report<F: GridEval>(m: &PolyMatrix<F>, budget: &BareissBudget, exec: Execution) -> Result<DetReport<F>> {
    m.require_square()?;
    let t0 = Instant::now();
    let (grid_value, grid_field_size) = det_evaluation_grid(m, exec)?;
    let grid_ms = t0.elapsed().as_millis();
    let t1 = Instant::now();
    let fraction_free = match det_fraction_free(m, budget, exec) {
        Ok(v) => StrategyOutcome::Computed(v),
        Err(Error::BudgetExceeded(why)) => StrategyOutcome::BudgetExceeded(why),
        Err(e) => return Err(e),
    };
    let fraction_free_ms = t1.elapsed().as_millis();
    if let StrategyOutcome::Computed(ff) = &fraction_free {
        if *ff != grid_value {
            return Err(Error::StrategyDisagreement {
                fraction_free: ff.to_string(),
                grid: grid_value.to_string(),
            });
        }
    }
    Ok(DetReport {
        value: grid_value.clone(),
        fraction_free,
        grid: StrategyOutcome::Computed(grid_value),
        grid_field_size,
        degree_bounds: per_variable_degree_bounds(m),
        fraction_free_ms,
        grid_ms,
    })
}

/// Exact determinant, cross-checked by both routes.
pub fn poly_det<F: GridEval>(m: &PolyMatrix<F>) -> Result<MultiPoly<F>> {
    Ok(det_with_report(m, &BareissBudget::default(), Execution::default())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Fp, PrimeField, Quadratic, QuadraticField, Rational, RationalField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3(nvars: usize) -> PolyRing<Fp> {
        PolyRing::new(PrimeField::new(3).unwrap(), nvars)
    }

    /// Laplace expansion along the first row; independent of both routes.
    fn laplace<F: Field>(m: &PolyMatrix<F>) -> MultiPoly<F> {
        fn rec<F: Field>(m: &PolyMatrix<F>, rows: &[usize], cols: &[usize]) -> MultiPoly<F> {
            if rows.is_empty() {
                return m.ring().one();
            }
            let mut acc = m.ring().zero();
            for (k, &c) in cols.iter().enumerate() {
                let e = m.get(rows[0], c);
                if e.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let t = e.mul(&rec(m, &rows[1..], &sub_cols));
                acc = if k % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
        let idx: Vec<usize> = (0..m.rows()).collect();
        rec(m, &idx, &idx)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, ring: PolyRing<Fp>, n: usize, max_deg: u32) -> PolyMatrix<Fp> {
        PolyMatrix::from_fn(ring, n, n, |_, _| ring.zero()).entries_mapped(|_| {
            let mut p = ring.zero();
            for _ in 0..rng.gen_range(0..4) {
                let mut e = vec![0u32; ring.nvars];
                let mut budget = rng.gen_range(0..=max_deg);
                for slot in e.iter_mut() {
                    let take = rng.gen_range(0..=budget);
                    *slot = take;
                    budget -= take;
                }
                p.add_term(Monomial::from_slice(&e), ring.scalar(rng.gen_range(0..3)));
            }
            p
        })
    }

    impl<F: Field> PolyMatrix<F> {
        fn entries_mapped(self, mut f: impl FnMut(&MultiPoly<F>) -> MultiPoly<F>) -> Self {
            let entries = self.entries.iter().map(&mut f).collect();
            PolyMatrix::new(self.ring, self.rows, self.cols, entries)
        }
    }

    #[test]
    fn one_by_one_identity_case() {
        let r = f3(2);
        let m = PolyMatrix::new(r, 1, 1, vec![r.var(0)]);
        assert_eq!(poly_det(&m).unwrap(), r.var(0));
    }

    #[test]
    fn triangular() {
        let r = f3(2);
        let m = PolyMatrix::new(r, 2, 2, vec![r.var(0), r.one(), r.zero(), r.var(1)]);
        assert_eq!(poly_det(&m).unwrap(), r.var(0).mul(&r.var(1)));
    }

    #[test]
    fn non_square_rejected() {
        let r = f3(1);
        let m = PolyMatrix::new(r, 1, 2, vec![r.one(), r.one()]);
        assert_eq!(poly_det(&m), Err(Error::NotSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn grid_too_small_is_an_error() {
        // z^3000 on the diagonal needs 3001 points per side: fine in F_3^8,
        // but z^7000 does not fit any supported extension.
        let r = f3(1);
        let m = PolyMatrix::new(r, 1, 1, vec![r.var(0).pow(7000)]);
        assert!(matches!(
            det_evaluation_grid(&m, Execution::Sequential),
            Err(Error::GridTooSmall { .. })
        ));
        assert!(matches!(poly_det(&m), Err(Error::GridTooSmall { .. })));
    }

    #[test]
    fn budget_is_reported_not_hidden() {
        let r = f3(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_matrix(&mut rng, r, 5, 2);
        let tiny = BareissBudget {
            max_entry_terms: 0,
            time_limit: None,
        };
        let rep = det_with_report(&m, &tiny, Execution::Sequential).unwrap();
        if rep.value.num_terms() > 0 {
            assert!(matches!(rep.fraction_free, StrategyOutcome::BudgetExceeded(_)));
            assert_eq!(rep.strategies_run(), vec!["evaluation-grid"]);
        }
    }

    #[test]
    fn strategies_agree_with_laplace_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 1..=6 {
            for nvars in 1..=2 {
                let r = f3(nvars);
                let m = random_matrix(&mut rng, r, n, 2);
                let rep = det_with_report(&m, &BareissBudget::unlimited(), Execution::Sequential).unwrap();
                assert!(rep.strategies_agree(), "n={n}");
                if n <= 5 {
                    assert_eq!(rep.value, laplace(&m), "n={n}");
                }
            }
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = f3(2);
        for _ in 0..5 {
            let a = random_matrix(&mut rng, r, 3, 2);
            let b = random_matrix(&mut rng, r, 3, 2);
            let ab = a.mul(&b);
            assert_eq!(poly_det(&ab).unwrap(), poly_det(&a).unwrap().mul(&poly_det(&b).unwrap()));
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = f3(2);
        let m = random_matrix(&mut rng, r, 5, 2);
        let a = det_evaluation_grid(&m, Execution::Sequential).unwrap().0;
        let b = det_evaluation_grid(&m, Execution::Parallel).unwrap().0;
        assert_eq!(a, b);
    }

    #[test]
    fn characteristic_zero_fields() {
        let q = PolyRing::<Rational>::new(RationalField, 1);
        let m = PolyMatrix::new(q, 2, 2, vec![q.var(0), q.int(2), q.int(3), q.var(0)]);
        // z² − 6
        assert_eq!(poly_det(&m).unwrap(), q.var(0).pow(2).sub(&q.int(6)));
        let k = PolyRing::<Quadratic>::new(QuadraticField::new(2).unwrap(), 0);
        let s = k.constant(QuadraticField::new(2).unwrap().sqrt_d());
        let m = PolyMatrix::new(k, 2, 2, vec![s.clone(), k.one(), k.one(), s]);
        assert_eq!(poly_det(&m).unwrap(), k.one());
    }

    #[test]
    fn dense_rank_and_inverse() {
        let f = PrimeField::new(5).unwrap();
        let m: Vec<Vec<Fp>> = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
            .iter()
            .map(|r| r.iter().map(|&v| f.elem(v)).collect())
            .collect();
        assert_eq!(field_rank(&m), 2);
        assert!(field_inverse(&m).is_none());
        let m: Vec<Vec<Fp>> = [[1, 2, 0], [0, 1, 4], [3, 0, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| f.elem(v)).collect())
            .collect();
        let inv = field_inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = f.elem(0);
                for k in 0..3 {
                    acc = acc + m[i][k] * inv[k][j];
                }
                assert_eq!(acc, f.elem(i64::from(i == j)));
            }
        }
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let f = crate::ring::ExtField::new(3, 3).unwrap();
        let xs = f.points(5);
        // 1 + t + t^3 evaluated then interpolated
        let coeffs_true = [f.one(), f.one(), f.zero(), f.one(), f.zero()];
        let ys: Vec<_> = xs
            .iter()
            .map(|x| {
                let mut acc = f.zero();
                let mut pw = f.one();
                for c in &coeffs_true {
                    acc = f.add(&acc, &f.mul(c, &pw));
                    pw = f.mul(&pw, x);
                }
                acc
            })
            .collect();
        assert_eq!(interpolate_1d(&f, &xs, &ys), coeffs_true.to_vec());
    }
}
