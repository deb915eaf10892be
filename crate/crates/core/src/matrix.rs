//! Dense polynomial matrices and the structured constructions built on them:
//! minors and Fitting-ideal generators, 4-Pfaffians, Koszul maps, Jacobians,
//! Jacobian duals and cofactor matrices.

use std::collections::HashMap;

use itertools::Itertools;
use num::Zero;

use crate::error::{Error, Result};
use crate::ring::{Coef, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>, // row-major
}

impl PolyMatrix {
    pub fn from_rows(ring: PolyRing, rows: Vec<Vec<Poly>>) -> PolyMatrix {
        let r = rows.len();
        assert!(r > 0, "matrix needs at least one row");
        let c = rows[0].len();
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        assert!(entries.iter().all(|p| *p.ring() == ring), "entry outside ring");
        PolyMatrix { ring, rows: r, cols: c, entries }
    }

    pub fn from_cols(ring: PolyRing, cols: Vec<Vec<Poly>>) -> PolyMatrix {
        let c = cols.len();
        assert!(c > 0);
        let r = cols[0].len();
        let mut rows = vec![Vec::with_capacity(c); r];
        for col in &cols {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, p) in col.iter().enumerate() {
                rows[i].push(p.clone());
            }
        }
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn from_fn(ring: PolyRing, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { ring, rows, cols, entries }
    }

    pub fn zero(ring: PolyRing, rows: usize, cols: usize) -> PolyMatrix {
        let z = ring.zero();
        PolyMatrix { ring, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(ring: PolyRing, n: usize) -> PolyMatrix {
        PolyMatrix::from_fn(ring.clone(), n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, p: Poly) {
        assert!(*p.ring() == self.ring);
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        (0..self.cols).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| p.neg())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        PolyMatrix::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(other.entry(k, j)));
            }
            acc
        })
    }

    /// Row vector times matrix.
    pub fn row_vec_mul(row: &[Poly], m: &PolyMatrix) -> Vec<Poly> {
        assert_eq!(row.len(), m.rows);
        (0..m.cols)
            .map(|j| {
                let mut acc = m.ring.zero();
                for (i, r) in row.iter().enumerate() {
                    if r.is_zero() || m.entry(i, j).is_zero() {
                        continue;
                    }
                    acc = acc.add(&r.mul(m.entry(i, j)));
                }
                acc
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, x) in v.iter().enumerate() {
                    if x.is_zero() || self.entry(i, j).is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.entry(i, j).mul(x));
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, right: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.rows, right.rows);
        assert!(self.ring == right.ring);
        PolyMatrix::from_fn(self.ring.clone(), self.rows, self.cols + right.cols, |i, j| {
            if j < self.cols {
                self.entry(i, j).clone()
            } else {
                right.entry(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, bottom: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, bottom.cols);
        PolyMatrix::from_fn(self.ring.clone(), self.rows + bottom.rows, self.cols, |i, j| {
            if i < self.rows {
                self.entry(i, j).clone()
            } else {
                bottom.entry(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self.entry(rows[i], cols[j]).clone()
        })
    }

    pub fn delete_row(&self, r: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn delete_col(&self, c: usize) -> PolyMatrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        self.submatrix(&rows, &cols)
    }

    /// Map all entries into an extension ring containing our variables.
    pub fn lift_to(&self, target: &PolyRing) -> Result<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.lift_to(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: target.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Weighted degree of each column, when each column is homogeneous with
    /// uniform ambient twists 0. Zero columns get degree `default`.
    pub fn column_degrees(&self, default: i64) -> Result<Vec<i64>> {
        (0..self.cols)
            .map(|j| {
                let mut deg: Option<i64> = None;
                for i in 0..self.rows {
                    let e = self.entry(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    let d = e.weighted_degree()?;
                    match deg {
                        None => deg = Some(d),
                        Some(prev) if prev == d => {}
                        Some(prev) => return Err(Error::NotHomogeneous(vec![prev, d])),
                    }
                }
                Ok(deg.unwrap_or(default))
            })
            .collect()
    }

    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        assert!(self.rows <= 64);
        let mut memo = HashMap::new();
        let all: Vec<usize> = (0..self.rows).collect();
        det_memo(self, &all, &all, &mut memo)
    }

    /// Fraction-free (Bareiss) rank over the fraction field.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Poly>> = (0..self.rows).map(|i| self.row(i)).collect();
        let mut prev = self.ring.one();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let pivot = m[r][c].clone();
            for i in (r + 1)..self.rows {
                for j in (c + 1)..self.cols {
                    let t = pivot.mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                    m[i][j] = t
                        .div_exact(&prev)
                        .expect("Bareiss division is exact by construction");
                }
                m[i][c] = self.ring.zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }
}

fn det_memo(
    m: &PolyMatrix,
    rows: &[usize],
    cols: &[usize],
    memo: &mut HashMap<(u64, u64), Poly>,
) -> Poly {
    debug_assert_eq!(rows.len(), cols.len());
    if rows.is_empty() {
        return m.ring().one();
    }
    if rows.len() == 1 {
        return m.entry(rows[0], cols[0]).clone();
    }
    let key = (mask_of(rows), mask_of(cols));
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    // expand along the first listed row
    let r0 = rows[0];
    let rest_rows = &rows[1..];
    let mut acc = m.ring().zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = m.entry(r0, c);
        if e.is_zero() {
            continue;
        }
        let rest_cols: Vec<usize> =
            cols.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &x)| x).collect();
        let sub = det_memo(m, rest_rows, &rest_cols, memo);
        if sub.is_zero() {
            continue;
        }
        let term = e.mul(&sub);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    memo.insert(key, acc.clone());
    acc
}

fn mask_of(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1 << i))
}

/// All `t x t` minors, in lexicographic order of (row subset, column subset).
pub fn minors(m: &PolyMatrix, t: usize) -> Result<Vec<Poly>> {
    if t < 1 || t > m.rows().min(m.cols()) {
        return Err(Error::Shape(format!(
            "minor size {t} out of range for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for rows in (0..m.rows()).combinations(t) {
        for cols in (0..m.cols()).combinations(t) {
            out.push(det_memo(m, &rows, &cols, &mut memo));
        }
    }
    Ok(out)
}

fn check_skew(s: &PolyMatrix) -> Result<()> {
    if s.rows() != s.cols() {
        return Err(Error::NotSkew);
    }
    for i in 0..s.rows() {
        if !s.entry(i, i).is_zero() {
            return Err(Error::NotSkew);
        }
        for j in (i + 1)..s.cols() {
            if *s.entry(j, i) != s.entry(i, j).neg() {
                return Err(Error::NotSkew);
            }
        }
    }
    Ok(())
}

/// The 4-Pfaffians `S_ab S_cd - S_ac S_bd + S_ad S_bc` over all index
/// 4-subsets `a<b<c<d`.
pub fn pfaffians4(s: &PolyMatrix) -> Result<Vec<Poly>> {
    check_skew(s)?;
    let n = s.rows();
    let mut out = Vec::new();
    for idx in (0..n).combinations(4) {
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let p = s
            .entry(a, b)
            .mul(s.entry(c, d))
            .sub(&s.entry(a, c).mul(s.entry(b, d)))
            .add(&s.entry(a, d).mul(s.entry(b, c)));
        out.push(p);
    }
    Ok(out)
}

/// `[[Y, f^t], [-f, 0]]`: the skew matrix augmented by a row of forms.
pub fn augment_skew(y: &PolyMatrix, f: &[Poly]) -> Result<PolyMatrix> {
    check_skew(y)?;
    let n = y.rows();
    if f.len() != n {
        return Err(Error::Shape(format!("expected {n} forms, got {}", f.len())));
    }
    let ring = y.ring().clone();
    Ok(PolyMatrix::from_fn(ring.clone(), n + 1, n + 1, |i, j| {
        if i < n && j < n {
            y.entry(i, j).clone()
        } else if i < n && j == n {
            f[i].clone()
        } else if i == n && j < n {
            f[j].neg()
        } else {
            ring.zero()
        }
    }))
}

/// Index of the pair `(i,j)`, `i<j`, in the ascending-lex list of 2-subsets.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    (0..i).map(|a| n - 1 - a).sum::<usize>() + (j - i - 1)
}

/// First Koszul map of `f`: the `n x C(n,2)` matrix whose column `(i<j)` is
/// `f_i e_j - f_j e_i`. Its columns generate the Koszul syzygies; pairing with
/// `(t_1..t_n)` yields the biforms `f_i t_j - f_j t_i`.
pub fn koszul1(ring: &PolyRing, f: &[Poly]) -> PolyMatrix {
    let n = f.len();
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    PolyMatrix::from_fn(ring.clone(), n, pairs.len(), |r, c| {
        let (i, j) = pairs[c];
        if r == j {
            f[i].clone()
        } else if r == i {
            f[j].neg()
        } else {
            ring.zero()
        }
    })
}

/// Second Koszul map of `f`: the `C(n,2) x C(n,3)` matrix with column
/// `(i<j<k)` equal to `f_i e_{jk} - f_j e_{ik} + f_k e_{ij}` in the
/// ascending-lex basis of 2-subsets.
pub fn koszul2(ring: &PolyRing, f: &[Poly]) -> PolyMatrix {
    let n = f.len();
    let triples: Vec<(usize, usize, usize)> = (0..n).tuple_combinations().collect();
    let npairs = n * (n - 1) / 2;
    let mut m = PolyMatrix::zero(ring.clone(), npairs, triples.len());
    for (c, &(i, j, k)) in triples.iter().enumerate() {
        m.set_entry(pair_index(n, j, k), c, f[i].clone());
        m.set_entry(pair_index(n, i, k), c, f[j].neg());
        m.set_entry(pair_index(n, i, j), c, f[k].clone());
    }
    m
}

/// Column `j` is the formal gradient of `polys[j]`.
pub fn jacobian(ring: &PolyRing, polys: &[Poly]) -> PolyMatrix {
    assert!(!polys.is_empty());
    PolyMatrix::from_fn(ring.clone(), ring.arity(), polys.len(), |i, j| polys[j].derivative(i))
}

/// Decompose a linear form in the `x`-variables into its coefficient per
/// variable; errors when a term is nonlinear, constant, or involves a
/// non-`x` variable.
fn linear_coeffs(p: &Poly, x_vars: &[usize], arity: usize) -> Result<Vec<Coef>> {
    let mut coefs = vec![Coef::zero(); arity];
    for (m, c) in p.terms() {
        let support = m.support();
        if support.len() != 1 || m.exps()[support[0]] != 1 || !x_vars.contains(&support[0]) {
            return Err(Error::NonLinearEntry);
        }
        coefs[support[0]] = c.clone();
    }
    Ok(coefs)
}

/// The Jacobian dual of a matrix with entries linear in the `x`-variables:
/// the unique matrix `B` with entries linear in the `y`-variables such that
/// `x . B = y . phi` entrywise. `phi` must live in the combined ring; `x_vars`
/// and `y_vars` index that ring and `y_vars.len() == phi.rows()`.
pub fn jacobian_dual(phi: &PolyMatrix, x_vars: &[usize], y_vars: &[usize]) -> Result<PolyMatrix> {
    if y_vars.len() != phi.rows() {
        return Err(Error::Shape(format!(
            "need one y-variable per row: {} vs {}",
            y_vars.len(),
            phi.rows()
        )));
    }
    let ring = phi.ring().clone();
    let arity = ring.arity();
    let mut b = PolyMatrix::zero(ring.clone(), x_vars.len(), phi.cols());
    for j in 0..phi.cols() {
        // collect sum_i y_i * phi[i][j] as coefficients per x-variable
        let mut per_x: Vec<Poly> = vec![ring.zero(); x_vars.len()];
        for i in 0..phi.rows() {
            let e = phi.entry(i, j);
            if e.is_zero() {
                continue;
            }
            let coefs = linear_coeffs(e, x_vars, arity)?;
            for (slot, &xv) in x_vars.iter().enumerate() {
                if !coefs[xv].is_zero() {
                    let term = ring.var(y_vars[i]).scale(&coefs[xv]);
                    per_x[slot] = per_x[slot].add(&term);
                }
            }
        }
        for (slot, p) in per_x.into_iter().enumerate() {
            b.set_entry(slot, j, p);
        }
    }
    Ok(b)
}

/// Adjugate: `M . cof(M) = det(M) . Id`.
pub fn cofactor_matrix(m: &PolyMatrix) -> PolyMatrix {
    assert_eq!(m.rows(), m.cols(), "cofactor matrix of a non-square matrix");
    let n = m.rows();
    let mut memo = HashMap::new();
    PolyMatrix::from_fn(m.ring().clone(), n, n, |i, j| {
        // entry (i,j) = (-1)^{i+j} det(M without row j, column i)
        let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let d = det_memo(m, &rows, &cols, &mut memo);
        if (i + j) % 2 == 0 {
            d
        } else {
            d.neg()
        }
    })
}

/// Check that every entry is a linear form (weighted degree 1 terms only).
pub fn all_entries_linear(m: &PolyMatrix) -> bool {
    m_entries_degree(m, 1)
}

fn m_entries_degree(m: &PolyMatrix, d: i64) -> bool {
    let w = m.ring().weights();
    (0..m.rows()).all(|i| {
        (0..m.cols()).all(|j| {
            m.entry(i, j)
                .terms()
                .iter()
                .all(|(mono, _)| mono.weighted_degree(w) == d)
        })
    })
}

/// Random-style structural check used by tests: `det(S) = pf(S)^2` for skew
/// 4x4 `S`, where `pf` is the single 4-Pfaffian.
pub fn pfaffian_det_identity(s: &PolyMatrix) -> Result<bool> {
    check_skew(s)?;
    if s.rows() != 4 {
        return Err(Error::Shape("expected a 4x4 matrix".into()));
    }
    let pf = &pfaffians4(s)?[0];
    Ok(s.det() == pf.mul(pf))
}

/// Generic skew matrix `Y` over an extension ring: returns the extended ring
/// `base[y_{ij}]` together with the matrix and the indices of the new
/// variables in ascending pair order.
pub fn generic_skew(base: &PolyRing, n: usize, weight: i64, prefix: &str) -> (PolyRing, PolyMatrix, Vec<usize>) {
    let names: Vec<String> = (0..n)
        .tuple_combinations()
        .map(|(i, j)| format!("{prefix}{}{}", i + 1, j + 1))
        .collect();
    let vars: Vec<(&str, i64)> = names.iter().map(|s| (s.as_str(), weight)).collect();
    let ring = base.extend(&vars);
    let offset = base.arity();
    let indices: Vec<usize> = (0..names.len()).map(|k| offset + k).collect();
    let mut y = PolyMatrix::zero(ring.clone(), n, n);
    for (k, (i, j)) in (0..n).tuple_combinations().enumerate() {
        y.set_entry(i, j, ring.var(offset + k));
        y.set_entry(j, i, ring.var(offset + k).neg());
    }
    (ring, y, indices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::ring::coef_int;

    fn ring3() -> PolyRing {
        PolyRing::new(&["x", "y", "z"])
    }

    #[test]
    fn minors_of_hankel() {
        // 2-minors of the twisted-cubic Hankel matrix give its defining ideal
        let r = PolyRing::new(&["x", "y", "z", "w"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let hankel = PolyMatrix::from_rows(
            r.clone(),
            vec![vec![p("x"), p("y"), p("z")], vec![p("y"), p("z"), p("w")]],
        );
        let ms = minors(&hankel, 2).unwrap();
        assert_eq!(ms.len(), 3);
        assert_eq!(ms[0], p("x*z-y^2"));
        assert_eq!(ms[1], p("x*w-y*z"));
        assert_eq!(ms[2], p("y*w-z^2"));
        // I_t of the identity is (1)
        let id = PolyMatrix::identity(r.clone(), 3);
        assert_eq!(minors(&id, 3).unwrap(), vec![r.one()]);
        // generic 2x2
        let g = PolyRing::new(&["a", "b", "c", "d"]);
        let q = |s: &str| parse_poly(s, &g).unwrap();
        let m2 = PolyMatrix::from_rows(g.clone(), vec![vec![q("a"), q("b")], vec![q("c"), q("d")]]);
        assert_eq!(minors(&m2, 2).unwrap(), vec![q("a*d-b*c")]);
    }

    #[test]
    fn pfaffian_shapes() {
        // generic skew 4x4: the single classical quadric
        let (ring, y, _) = generic_skew(&PolyRing::new(&[]), 4, 1, "y");
        let pf = pfaffians4(&y).unwrap();
        assert_eq!(pf.len(), 1);
        let p = |s: &str| parse_poly(s, &ring).unwrap();
        assert_eq!(pf[0], p("y12*y34 - y13*y24 + y14*y23"));
        assert!(pfaffian_det_identity(&y).unwrap());

        // 3x3 skew has no 4-Pfaffians
        let (_, y3, _) = generic_skew(&PolyRing::new(&[]), 3, 1, "y");
        assert!(pfaffians4(&y3).unwrap().is_empty());

        // non-skew input rejected
        let r = ring3();
        let bad = PolyMatrix::identity(r, 2);
        assert!(matches!(pfaffians4(&bad), Err(Error::NotSkew)));
    }

    #[test]
    fn augmented_skew_pfaffian() {
        // n = 3: single 4-Pfaffian f1*y23 - f2*y13 + f3*y12
        let base = ring3();
        let (ring, y, _) = generic_skew(&base, 3, 1, "y");
        let f: Vec<Poly> = vec![
            parse_poly("x^2", &ring).unwrap(),
            parse_poly("y^2", &ring).unwrap(),
            parse_poly("z^2", &ring).unwrap(),
        ];
        let p4 = augment_skew(&y, &f).unwrap();
        assert_eq!(p4.rows(), 4);
        assert_eq!(*p4.entry(3, 0), f[0].neg());
        assert!(p4.entry(3, 3).is_zero());
        let pfs = pfaffians4(&p4).unwrap();
        assert_eq!(pfs.len(), 1);
        let expected = parse_poly("x^2*y23 - y^2*y13 + z^2*y12", &ring).unwrap();
        assert_eq!(pfs[0], expected);
    }

    #[test]
    fn koszul_maps_compose_to_zero() {
        let r = ring3();
        let f: Vec<Poly> = vec![r.var(0), r.var(1), r.var(2)];
        let k2 = koszul2(&r, &f);
        assert_eq!((k2.rows(), k2.cols()), (3, 1));
        // column in basis (e12, e13, e23) is (z, -y, x)
        assert_eq!(*k2.entry(0, 0), r.var(2));
        assert_eq!(*k2.entry(1, 0), r.var(1).neg());
        assert_eq!(*k2.entry(2, 0), r.var(0));
        let k1 = koszul1(&r, &f);
        assert!(k1.mul(&k2).is_zero());

        // n = 4 structural shape: 6x4, each column has three nonzero entries
        let r4 = PolyRing::new(&["a", "b", "c", "d"]);
        let f4: Vec<Poly> = (0..4).map(|i| r4.var(i)).collect();
        let k24 = koszul2(&r4, &f4);
        assert_eq!((k24.rows(), k24.cols()), (6, 4));
        for j in 0..4 {
            let nonzero = (0..6).filter(|&i| !k24.entry(i, j).is_zero()).count();
            assert_eq!(nonzero, 3);
        }
        assert!(koszul1(&r4, &f4).mul(&k24).is_zero());
    }

    #[test]
    fn jacobian_and_euler() {
        let r = PolyRing::new(&["x", "y", "z", "w"]);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let polys = vec![p("x*z-y^2"), p("x*w-y*z"), p("y*w-z^2")];
        let jac = jacobian(&r, &polys);
        assert_eq!((jac.rows(), jac.cols()), (4, 3));
        assert_eq!(jac.col(0), vec![p("z"), p("-2*y"), p("x"), p("0")]);
        // Euler: sum x_i d/dx_i f = deg(f) * f for homogeneous f
        for f in &polys {
            let mut acc = r.zero();
            for i in 0..4 {
                acc = acc.add(&r.var(i).mul(&f.derivative(i)));
            }
            assert_eq!(acc, f.scale(&coef_int(2)));
        }
        // constants differentiate to zero
        let jac0 = jacobian(&r, &[r.one()]);
        assert!(jac0.is_zero());
    }

    #[test]
    fn jacobian_dual_identity() {
        // combined ring Q[x1,x2,y1,y2]; phi a single column (x1; x2)
        let ring = PolyRing::new(&["x1", "x2", "y1", "y2"]);
        let phi = PolyMatrix::from_rows(
            ring.clone(),
            vec![vec![ring.var(0)], vec![ring.var(1)]],
        );
        let b = jacobian_dual(&phi, &[0, 1], &[2, 3]).unwrap();
        assert_eq!((b.rows(), b.cols()), (2, 1));
        assert_eq!(*b.entry(0, 0), ring.var(2));
        assert_eq!(*b.entry(1, 0), ring.var(3));
        // x . B == y . phi
        let x_row = vec![ring.var(0), ring.var(1)];
        let y_row = vec![ring.var(2), ring.var(3)];
        assert_eq!(PolyMatrix::row_vec_mul(&x_row, &b), PolyMatrix::row_vec_mul(&y_row, &phi));
        // nonlinear entries rejected
        let bad = PolyMatrix::from_rows(ring.clone(), vec![vec![ring.var(0).pow(2)], vec![ring.var(1)]]);
        assert!(matches!(jacobian_dual(&bad, &[0, 1], &[2, 3]), Err(Error::NonLinearEntry)));
    }

    #[test]
    fn cofactor_conventions() {
        let g = PolyRing::new(&["a", "b", "c", "d"]);
        let q = |s: &str| parse_poly(s, &g).unwrap();
        let m = PolyMatrix::from_rows(g.clone(), vec![vec![q("a"), q("b")], vec![q("c"), q("d")]]);
        let cof = cofactor_matrix(&m);
        assert_eq!(cof, PolyMatrix::from_rows(g.clone(), vec![vec![q("d"), q("-b")], vec![q("-c"), q("a")]]));
        let prod = m.mul(&cof);
        let det = m.det();
        assert_eq!(*prod.entry(0, 0), det);
        assert_eq!(*prod.entry(1, 1), det);
        assert!(prod.entry(0, 1).is_zero());
        assert!(prod.entry(1, 0).is_zero());
        // identity maps to identity
        let id = PolyMatrix::identity(g.clone(), 3);
        assert_eq!(cofactor_matrix(&id), id);
        // diagonal (x, y, z) -> diagonal (yz, xz, xy)
        let r = ring3();
        let d = PolyMatrix::from_fn(r.clone(), 3, 3, |i, j| if i == j { r.var(i) } else { r.zero() });
        let cd = cofactor_matrix(&d);
        assert_eq!(*cd.entry(0, 0), r.var(1).mul(&r.var(2)));
        assert_eq!(*cd.entry(1, 1), r.var(0).mul(&r.var(2)));
        assert_eq!(*cd.entry(2, 2), r.var(0).mul(&r.var(1)));
    }

    #[test]
    fn rank_bareiss() {
        let r = ring3();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        // rank 1: second row is x times the first
        let m = PolyMatrix::from_rows(
            r.clone(),
            vec![vec![p("y"), p("z")], vec![p("x*y"), p("x*z")]],
        );
        assert_eq!(m.rank(), 1);
        let id = PolyMatrix::identity(r.clone(), 3);
        assert_eq!(id.rank(), 3);
        let z = PolyMatrix::zero(r.clone(), 2, 5);
        assert_eq!(z.rank(), 0);
        // Koszul syzygy matrix of (x,y,z) has rank 2
        let k1 = koszul1(&r, &[r.var(0), r.var(1), r.var(2)]);
        assert_eq!(k1.rank(), 2);
    }
}
