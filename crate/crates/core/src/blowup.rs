//! Presentation ideals of symmetric and Rees algebras of modules,
//! linear-type testing, special fiber and analytic spread, Fitting defect
//! and the local-generation conditions `G_s`, and the dimension-formula
//! check `dim Rees(E) = dim R + rank E`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{kernel_of_ring_map, linear_prereduce, IdealHandle, ModuleHandle};
use crate::invariants::krull_dim;
use crate::matrix::{minors, PolyMatrix};
use crate::ring::{Poly, PolyRing};

/// A finitely generated module over `R`, given by an embedded generator
/// matrix (columns span `E` inside `R^n`), by a free presentation matrix
/// `phi` (rows = generators, columns = relations), or both.
#[derive(Debug)]
pub struct PresentedModule {
    ring: PolyRing,
    embedded: Option<PolyMatrix>,
    presentation: OnceLock<Result<PolyMatrix>>,
    given_presentation: Option<PolyMatrix>,
    gen_degrees: Vec<i64>,
    declared_rank: Option<usize>,
    var_prefix: String,
    var_names: Option<Vec<String>>,
    extension: OnceLock<Extension>,
    sym: OnceLock<Result<IdealHandle>>,
    rees: OnceLock<Result<IdealHandle>>,
}

#[derive(Clone, Debug)]
pub struct Extension {
    /// `R[y_1..y_m]`, presentation variables last.
    pub ring: PolyRing,
    /// index of the first presentation variable
    pub y_start: usize,
    /// number of presentation variables
    pub m: usize,
}

impl Extension {
    pub fn y_indices(&self) -> Vec<usize> {
        (self.y_start..self.y_start + self.m).collect()
    }

    pub fn y_vars(&self) -> Vec<Poly> {
        self.y_indices().into_iter().map(|i| self.ring.var(i)).collect()
    }

    /// The base variables (everything before the presentation block).
    pub fn x_indices(&self) -> Vec<usize> {
        (0..self.y_start).collect()
    }
}

impl PresentedModule {
    /// Module embedded in `R^n` via the columns of `gens`.
    pub fn from_embedded(gens: PolyMatrix) -> Result<PresentedModule> {
        let ring = gens.ring().clone();
        let degrees = gens.column_degrees(1)?;
        Ok(PresentedModule {
            ring,
            embedded: Some(gens),
            presentation: OnceLock::new(),
            given_presentation: None,
            gen_degrees: degrees.into_iter().map(|d| d.max(1)).collect(),
            declared_rank: None,
            var_prefix: "y".to_string(),
            var_names: None,
            extension: OnceLock::new(),
            sym: OnceLock::new(),
            rees: OnceLock::new(),
        })
    }

    /// Module given by a free presentation `R^p --phi--> R^m -> E -> 0`.
    pub fn from_presentation(phi: PolyMatrix, gen_degrees: Option<Vec<i64>>) -> PresentedModule {
        let ring = phi.ring().clone();
        let m = phi.rows();
        let degrees = gen_degrees.unwrap_or_else(|| vec![1; m]);
        assert_eq!(degrees.len(), m);
        PresentedModule {
            ring,
            embedded: None,
            presentation: OnceLock::new(),
            given_presentation: Some(phi),
            gen_degrees: degrees,
            declared_rank: None,
            var_prefix: "y".to_string(),
            var_names: None,
            extension: OnceLock::new(),
            sym: OnceLock::new(),
            rees: OnceLock::new(),
        }
    }

    /// Embedded module with an already-known presentation matrix; the
    /// consistency of the pair is the caller's claim and can be checked with
    /// [`PresentedModule::verify_presentation`].
    pub fn from_embedded_with_presentation(
        gens: PolyMatrix,
        phi: PolyMatrix,
    ) -> Result<PresentedModule> {
        assert_eq!(gens.cols(), phi.rows(), "presentation rows must match generators");
        let mut m = PresentedModule::from_embedded(gens)?;
        m.given_presentation = Some(phi);
        Ok(m)
    }

    pub fn with_rank(mut self, r: usize) -> Self {
        self.declared_rank = Some(r);
        self
    }

    pub fn with_var_prefix(mut self, prefix: &str) -> Self {
        self.var_prefix = prefix.to_string();
        self
    }

    /// Explicit presentation-variable names (one per generator).
    pub fn with_var_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.num_generators());
        self.var_names = Some(names);
        self
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i64] {
        &self.gen_degrees
    }

    pub fn embedded_gens(&self) -> Option<&PolyMatrix> {
        self.embedded.as_ref()
    }

    /// Rank over the fraction field: from the embedded matrix when present,
    /// otherwise `m - rank(phi)`. A declared rank takes precedence.
    pub fn rank(&self) -> Result<usize> {
        if let Some(r) = self.declared_rank {
            return Ok(r);
        }
        if let Some(g) = &self.embedded {
            return Ok(g.rank());
        }
        let phi = self.presentation()?;
        Ok(self.num_generators() - phi.rank())
    }

    /// The presentation (syzygy) matrix `m x p`; computed from the embedded
    /// generators when not given.
    pub fn presentation(&self) -> Result<&PolyMatrix> {
        if let Some(phi) = &self.given_presentation {
            return Ok(phi);
        }
        self.presentation
            .get_or_init(|| {
                let g = self.embedded.as_ref().expect("either form present");
                ModuleHandle::new(g.clone()).syzygies()
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// When both an embedding and a presentation were given: the columns of
    /// `phi` and the syzygies of the embedding generate the same module.
    pub fn verify_presentation(&self) -> Result<bool> {
        let Some(g) = &self.embedded else { return Ok(true) };
        let Some(phi) = &self.given_presentation else { return Ok(true) };
        let syz = ModuleHandle::new(g.clone()).syzygies()?;
        if syz.cols() == 0 {
            return Ok(phi.is_zero() || phi.cols() == 0);
        }
        let a = ModuleHandle::new(syz);
        let b = ModuleHandle::new(phi.clone());
        a.equals(&b)
    }

    /// The extended polynomial ring `R[y]` with one weighted variable per
    /// generator.
    pub fn extension(&self) -> &Extension {
        self.extension.get_or_init(|| {
            let m = self.num_generators();
            let names = match &self.var_names {
                Some(n) => n.clone(),
                None => presentation_var_names(&self.ring, m, &self.var_prefix),
            };
            let vars: Vec<(&str, i64)> = names
                .iter()
                .zip(&self.gen_degrees)
                .map(|(n, w)| (n.as_str(), (*w).max(1)))
                .collect();
            let ring = self.ring.extend(&vars);
            Extension { ring, y_start: self.ring.arity(), m }
        })
    }

    /// `I_1(y . phi)`: the defining ideal of the symmetric algebra in `R[y]`.
    pub fn symmetric_ideal(&self) -> Result<IdealHandle> {
        self.sym
            .get_or_init(|| {
                let ext = self.extension().clone();
                let phi = self.presentation()?;
                let phi_ext = phi.lift_to(&ext.ring)?;
                let y = ext.y_vars();
                let gens = PolyMatrix::row_vec_mul(&y, &phi_ext);
                Ok(IdealHandle::new(ext.ring.clone(), gens))
            })
            .as_ref()
            .map_err(Clone::clone)
            .map(Clone::clone)
    }

    /// Defining ideal of the Rees algebra in `R[y]`: the kernel of
    /// `R[y] -> R[t]`, `y_j -> (t . G)_j`, by elimination. Requires the
    /// embedded form.
    pub fn rees_ideal(&self) -> Result<IdealHandle> {
        self.rees
            .get_or_init(|| {
                let g = self
                    .embedded
                    .as_ref()
                    .ok_or_else(|| Error::Invalid("Rees ideal needs an embedded module".into()))?;
                let ext = self.extension().clone();
                rees_ideal_of_matrix(g, &ext, &[])
            })
            .as_ref()
            .map_err(Clone::clone)
            .map(Clone::clone)
    }

    /// `S(E) = Rees(E)`: torsion-free defining ideals agree.
    pub fn is_linear_type(&self) -> Result<bool> {
        let sym = self.symmetric_ideal()?;
        let rees = self.rees_ideal()?;
        sym.equals(&rees)
    }

    /// Special fiber `(rees + (x)) ∩ k[y]` and the analytic spread.
    pub fn special_fiber(&self) -> Result<(IdealHandle, i64)> {
        let rees = self.rees_ideal()?;
        special_fiber_of(&rees, self.extension())
    }

    /// `max_t max(0, rank(phi) - t + 1 - codim I_t(phi))` with the rank taken
    /// over the fraction field. Zero is the condition `F_0`.
    pub fn fitting_defect(&self) -> Result<(i64, Vec<FittingRow>)> {
        let phi = self.presentation()?.clone();
        let q = phi.rank();
        fitting_defect_of(&phi, q)
    }

    /// Condition `G_s` through the Fitting translation: for every `t` up to
    /// `rank(phi)`, `codim I_t(phi) >= min(rank(phi) - t + 2, s)`. Evaluated
    /// from large `t` downward with early exit on failure.
    pub fn check_gs(&self, s: i64) -> Result<(bool, Vec<GsRow>)> {
        let phi = self.presentation()?.clone();
        let q = phi.rank();
        check_gs_of(&phi, q, s)
    }

    /// `dim Rees(E) = dim R + rank E` (ambient polynomial ring is the base).
    pub fn dim_check_rees(&self) -> Result<DimCheck> {
        let rees = self.rees_ideal()?;
        let expected = self.ring.arity() as i64 + self.rank()? as i64;
        let actual = krull_dim(&rees)?;
        Ok(DimCheck { expected, actual, equal: expected == actual })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DimCheck {
    pub expected: i64,
    pub actual: i64,
    pub equal: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct FittingRow {
    pub t: usize,
    pub codim: i64,
    pub contribution: i64,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct GsRow {
    pub t: usize,
    pub required: i64,
    pub codim: i64,
    pub holds: bool,
}

/// Minimal generating set of a graded submodule: drop columns (last to
/// first) whose reduction lies in the span of the rest plus `(x)` times the
/// span of all (graded Nakayama).
pub fn prune_module_generators(g: &PolyMatrix) -> Result<PolyMatrix> {
    let ring = g.ring().clone();
    let mut cols: Vec<Vec<Poly>> = (0..g.cols()).map(|j| g.col(j)).collect();
    cols.retain(|c| c.iter().any(|p| !p.is_zero()));
    if cols.is_empty() {
        return Err(Error::Invalid("module has no nonzero generators".into()));
    }
    let mut j = cols.len();
    while j > 0 {
        j -= 1;
        if cols.len() == 1 {
            break;
        }
        let mut test_cols: Vec<Vec<Poly>> = Vec::new();
        for (k, c) in cols.iter().enumerate() {
            if k != j {
                test_cols.push(c.clone());
            }
        }
        for c in &cols {
            for v in 0..ring.arity() {
                let xv = ring.var(v);
                test_cols.push(c.iter().map(|p| p.mul(&xv)).collect());
            }
        }
        let test_module = crate::groebner::ModuleHandle::new(PolyMatrix::from_cols(ring.clone(), test_cols));
        if test_module.contains_vector(&cols[j])? {
            cols.remove(j);
        }
    }
    Ok(PolyMatrix::from_cols(ring, cols))
}

/// Deterministic presentation-variable names that avoid collisions with the
/// base ring: `y1..ym`, falling back to `y_1..` style prefixes.
pub fn presentation_var_names(ring: &PolyRing, m: usize, preferred: &str) -> Vec<String> {
    let mut prefix = preferred.to_string();
    loop {
        let names: Vec<String> = (1..=m).map(|j| format!("{prefix}{j}")).collect();
        if names.iter().all(|n| ring.var_index(n).is_none()) {
            return names;
        }
        prefix.push('_');
    }
}

/// Kernel of `R[y] -> (R/J)[t]`, `y_j -> (t . G)_j`, with `J` given by
/// `modulus` (empty slice for `J = 0`): the Rees ideal of the column span of
/// `g`, over the quotient when a modulus is supplied. The result lives in
/// `ext.ring`.
pub fn rees_ideal_of_matrix(g: &PolyMatrix, ext: &Extension, modulus: &[Poly]) -> Result<IdealHandle> {
    let base = g.ring().clone();
    assert_eq!(ext.y_start, base.arity());
    assert_eq!(ext.m, g.cols());
    let n = g.rows();
    let t_names: Vec<String> = {
        let mut prefix = "t".to_string();
        loop {
            let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
            if names.iter().all(|nm| base.var_index(nm).is_none()) {
                break names;
            }
            prefix.push('_');
        }
    };
    let t_vars: Vec<(&str, i64)> = t_names.iter().map(|nm| (nm.as_str(), 1)).collect();
    let target = base.extend(&t_vars);
    let t: Vec<Poly> = (0..n).map(|i| target.var(base.arity() + i)).collect();
    let g_ext = g.lift_to(&target)?;
    let images_vec = PolyMatrix::row_vec_mul(&t, &g_ext);
    let y_names: Vec<String> = ext
        .ring
        .var_names()
        .iter()
        .skip(ext.y_start)
        .cloned()
        .collect();
    let y_weights: Vec<i64> = ext.ring.weights().iter().skip(ext.y_start).copied().collect();
    let mut images: Vec<(String, i64, Poly)> = Vec::with_capacity(ext.m);
    for j in 0..ext.m {
        images.push((y_names[j].clone(), y_weights[j], images_vec[j].clone()));
    }
    let eliminate: Vec<usize> = (base.arity()..target.arity()).collect();
    let kernel = if modulus.is_empty() {
        kernel_of_ring_map(&target, &images, &eliminate)?
    } else {
        kernel_of_ring_map_modulo(&target, &images, &eliminate, modulus)?
    };
    // align the kernel ring (same names, official weights) with ext.ring
    let gens = kernel
        .generators()
        .iter()
        .map(|p| p.lift_to(&ext.ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealHandle::new(ext.ring.clone(), gens))
}

/// Kernel of a ring map into a quotient: the graph ideal is enlarged by the
/// modulus before eliminating.
fn kernel_of_ring_map_modulo(
    target: &PolyRing,
    images: &[(String, i64, Poly)],
    eliminate: &[usize],
    modulus: &[Poly],
) -> Result<IdealHandle> {
    let scratch_base = target.unweighted();
    let new_vars: Vec<(&str, i64)> = images.iter().map(|(n, _, _)| (n.as_str(), 1)).collect();
    let scratch = scratch_base.extend(&new_vars);
    let offset = target.arity();
    let mut gens = Vec::with_capacity(images.len() + modulus.len());
    for (k, (_, _, img)) in images.iter().enumerate() {
        let u = scratch.var(offset + k);
        gens.push(u.sub(&img.lift_to(&scratch)?));
    }
    for f in modulus {
        gens.push(f.lift_to(&scratch)?);
    }
    let graph = IdealHandle::new(scratch.clone(), gens);
    let eliminated = graph.eliminate(eliminate)?;
    let kept: Vec<(String, i64)> = target
        .var_names()
        .iter()
        .zip(target.weights())
        .enumerate()
        .filter(|(i, _)| !eliminate.contains(i))
        .map(|(_, (n, w))| (n.clone(), *w))
        .collect();
    let mut vars: Vec<(&str, i64)> = kept.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    for (n, w, _) in images {
        vars.push((n.as_str(), *w));
    }
    let ring = PolyRing::with_weights(&vars);
    let gens = eliminated
        .generators()
        .iter()
        .map(|p| p.lift_to(&ring))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdealHandle::new(ring, gens))
}

/// Fiber ideal `(I + (x)) ∩ k[y]` (by substituting the base variables with
/// zero in a generating set) and its dimension, the analytic spread.
pub fn special_fiber_of(rees: &IdealHandle, ext: &Extension) -> Result<(IdealHandle, i64)> {
    let x_idx = ext.x_indices();
    let keep: Vec<bool> = (0..ext.ring.arity()).map(|i| i >= ext.y_start).collect();
    let fiber_ring = ext.ring.subring(&keep);
    let gb = rees.gb_default()?;
    let mut gens = Vec::new();
    for g in gb.iter() {
        let cut = g.set_vars_zero(&x_idx);
        if !cut.is_zero() {
            gens.push(cut.restrict_to(&fiber_ring)?);
        }
    }
    let fiber = IdealHandle::new(fiber_ring, gens);
    let spread = krull_dim(&fiber)?;
    Ok((fiber, spread))
}

/// Codimension that tolerates the unit ideal (returned as `arity + 1`).
pub fn codim_loose(ideal: &IdealHandle) -> Result<i64> {
    let d = krull_dim(ideal)?;
    Ok(ideal.ring().arity() as i64 - d)
}

fn minor_ideal_reduced(phi: &PolyMatrix, t: usize) -> Result<IdealHandle> {
    let gens = minors(phi, t)?;
    let gens = linear_prereduce(phi.ring(), gens);
    Ok(IdealHandle::new(phi.ring().clone(), gens))
}

pub fn fitting_defect_of(phi: &PolyMatrix, rank_phi: usize) -> Result<(i64, Vec<FittingRow>)> {
    let mut rows = Vec::new();
    let mut df = 0i64;
    for t in 1..=rank_phi {
        let it = minor_ideal_reduced(phi, t)?;
        let codim = codim_loose(&it)?;
        let contribution = (rank_phi as i64 - t as i64 + 1 - codim).max(0);
        df = df.max(contribution);
        rows.push(FittingRow { t, codim, contribution });
    }
    Ok((df, rows))
}

pub fn check_gs_of(phi: &PolyMatrix, rank_phi: usize, s: i64) -> Result<(bool, Vec<GsRow>)> {
    let q = rank_phi as i64;
    let mut rows = Vec::new();
    for t in (1..=rank_phi).rev() {
        let required = (q - t as i64 + 2).min(s);
        if required <= 0 {
            rows.push(GsRow { t, required, codim: 0, holds: true });
            continue;
        }
        let it = minor_ideal_reduced(phi, t)?;
        let codim = codim_loose(&it)?;
        let holds = codim >= required;
        rows.push(GsRow { t, required, codim, holds });
        if !holds {
            return Ok((false, rows));
        }
    }
    Ok((true, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str, r: &PolyRing) -> Poly {
        parse_poly(s, r).unwrap()
    }

    /// The ideal (x, y) of k[x,y] as a module: one Koszul syzygy.
    fn ideal_module_xy() -> PresentedModule {
        let r = PolyRing::new(&["x", "y"]);
        let g = PolyMatrix::from_rows(r.clone(), vec![vec![r.var(0), r.var(1)]]);
        PresentedModule::from_embedded(g).unwrap()
    }

    #[test]
    fn sym_of_free_and_of_ideal() {
        // E = R: empty syzygies, (0)
        let r = PolyRing::new(&["x", "y"]);
        let free = PresentedModule::from_embedded(PolyMatrix::identity(r.clone(), 1)).unwrap();
        assert!(free.symmetric_ideal().unwrap().is_zero_ideal().unwrap());

        // E = (x, y): single Koszul relation x*y2 - y*y1
        let m = ideal_module_xy();
        let sym = m.symmetric_ideal().unwrap();
        let ext = m.extension();
        let expected = p("x*y2 - y*y1", &ext.ring);
        assert!(sym.contains(&expected).unwrap());
        let gb = sym.gb_default().unwrap();
        assert_eq!(gb.len(), 1);
    }

    #[test]
    fn rees_of_complete_intersection_ideal_is_linear_type() {
        let m = ideal_module_xy();
        let rees = m.rees_ideal().unwrap();
        let sym = m.symmetric_ideal().unwrap();
        assert!(sym.equals(&rees).unwrap());
        assert!(m.is_linear_type().unwrap());
        // dim Rees = d + r = 2 + 1
        let check = m.dim_check_rees().unwrap();
        assert_eq!(check.expected, 3);
        assert!(check.equal);
        // special fiber of (x,y) is everything: (0), spread 2
        let (fiber, spread) = m.special_fiber().unwrap();
        assert!(fiber.is_zero_ideal().unwrap());
        assert_eq!(spread, 2);
    }

    #[test]
    fn rees_of_square_monomials() {
        // E = (x^2, xy, y^2): one extra fiber quadric beyond the symmetric ideal
        let r = PolyRing::new(&["x", "y"]);
        let g = PolyMatrix::from_rows(
            r.clone(),
            vec![vec![p("x^2", &r), p("x*y", &r), p("y^2", &r)]],
        );
        let m = PresentedModule::from_embedded(g).unwrap();
        let sym = m.symmetric_ideal().unwrap();
        let rees = m.rees_ideal().unwrap();
        assert!(rees.contains_ideal(&sym).unwrap());
        assert!(!sym.contains_ideal(&rees).unwrap());
        assert!(!m.is_linear_type().unwrap());
        // the Veronese fiber relation y1*y3 - y2^2 appears
        let ext = m.extension();
        let veronese = p("y1*y3 - y2^2", &ext.ring);
        assert!(rees.contains(&veronese).unwrap());
        assert!(!sym.contains(&veronese).unwrap());
        // fiber is one quadric: analytic spread 2
        let (fiber, spread) = m.special_fiber().unwrap();
        assert_eq!(spread, 2);
        let fiber_gb = fiber.gb_default().unwrap();
        assert_eq!(fiber_gb.len(), 1);
    }

    #[test]
    fn fitting_defect_koszul() {
        // presentation of (x, y): the 2x1 Koszul column (y, -x)
        let m = ideal_module_xy();
        let (df, rows) = m.fitting_defect().unwrap();
        assert_eq!(df, 0);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].codim, 2);
        // free module: no relations, defect 0 by convention (empty sweep)
        let r = PolyRing::new(&["x", "y"]);
        let free = PresentedModule::from_embedded(PolyMatrix::identity(r.clone(), 2)).unwrap();
        let (df_free, rows_free) = free.fitting_defect().unwrap();
        assert_eq!(df_free, 0);
        assert!(rows_free.is_empty());
    }

    #[test]
    fn gs_for_koszul_module() {
        let m = ideal_module_xy();
        // q = 1; required at t=1 is min(2, s); codim I_1 = 2
        let (holds, rows) = m.check_gs(2).unwrap();
        assert!(holds);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].codim, 2);
    }

    #[test]
    fn rees_over_quotient_smoke() {
        // E = image of (x, y) in R/(x^2): Rees over the quotient contains x^2
        let r = PolyRing::new(&["x", "y"]);
        let g = PolyMatrix::from_rows(r.clone(), vec![vec![r.var(0), r.var(1)]]);
        let m = PresentedModule::from_embedded(g.clone()).unwrap();
        let ext = m.extension().clone();
        let modulus = vec![p("x^2", &r)];
        let over_q = rees_ideal_of_matrix(&g, &ext, &modulus).unwrap();
        assert!(over_q.contains(&p("x^2", &ext.ring)).unwrap());
        let plain = m.rees_ideal().unwrap();
        assert!(over_q.contains_ideal(&plain).unwrap());
    }
}
