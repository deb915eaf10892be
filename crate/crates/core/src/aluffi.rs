//! The embedded Aluffi algebra of a deformed module: assemble the
//! presentation `rees(E) + J + I_1(y . Psi)` and evaluate the dimension
//! bounds `d + r <= dim A(E) <= min(d + n + g, d + r + df(E))`.

use crate::blowup::{codim_loose, prune_module_generators, rees_ideal_of_matrix, Extension, PresentedModule};
use crate::error::{Error, Result};
use crate::groebner::{linear_prereduce, IdealHandle, ModuleHandle};
use crate::invariants::{cm_report, krull_dim, AlgebraReport};
use crate::matrix::{minors, PolyMatrix};
use crate::ring::{Poly, PolyRing};

/// The data `(J, n, G, Psi)` defining one embedded Aluffi algebra: `J` is the
/// kernel of `R -> A`, `G` spans the deformation `E` inside `R^n`, and `Psi`
/// expresses the generators of `J F` through the columns of `G`.
#[derive(Debug)]
pub struct EmbeddedDeformation {
    ring: PolyRing,
    j_ideal: IdealHandle,
    ambient_rank: usize,
    gens: PolyMatrix,
    content: PolyMatrix,
    module: ModuleHandle,
    var_prefix: String,
    var_names: Option<Vec<String>>,
}

impl EmbeddedDeformation {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn j_ideal(&self) -> &IdealHandle {
        &self.j_ideal
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn gens(&self) -> &PolyMatrix {
        &self.gens
    }

    pub fn content_matrix(&self) -> &PolyMatrix {
        &self.content
    }

    pub fn module(&self) -> &ModuleHandle {
        &self.module
    }

    /// `G . Psi` reproduces the `J F` generator matrix exactly.
    pub fn verify_content(&self) -> bool {
        let jf = jf_matrix(&self.j_ideal, self.ambient_rank);
        self.gens.mul(&self.content) == jf
    }

    /// Explicit presentation-variable names (one per pruned generator).
    pub fn with_var_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.gens.cols());
        self.var_names = Some(names);
        self
    }

    /// The deformation as a presented module, with the deformation's
    /// variable names.
    pub fn presented_module(&self) -> Result<PresentedModule> {
        let m = PresentedModule::from_embedded(self.gens.clone())?.with_var_prefix(&self.var_prefix);
        Ok(match &self.var_names {
            Some(names) => m.with_var_names(names.clone()),
            None => m,
        })
    }
}

/// The columns `g_k e_i` spanning `J F` inside `R^n`, `k` outer, `i` inner.
fn jf_matrix(j: &IdealHandle, n: usize) -> PolyMatrix {
    let ring = j.ring().clone();
    let mut cols: Vec<Vec<Poly>> = Vec::new();
    for g in j.generators() {
        for i in 0..n {
            let mut col = vec![ring.zero(); n];
            col[i] = g.clone();
            cols.push(col);
        }
    }
    if cols.is_empty() {
        return PolyMatrix::from_fn(ring.clone(), n, 0, |_, _| ring.zero());
    }
    PolyMatrix::from_cols(ring, cols)
}

/// Assemble the canonical `J`-deformation from lifted generator columns:
/// `G = [lifted | J F generators]` pruned to a minimal generating set by
/// graded Nakayama, then the content matrix by membership lifting.
pub fn deform_from_quotient(
    j: &IdealHandle,
    n: usize,
    lifted: &PolyMatrix,
    var_prefix: &str,
) -> Result<EmbeddedDeformation> {
    let ring = j.ring().clone();
    assert_eq!(lifted.rows(), n, "lifted columns live in R^n");
    assert!(*lifted.ring() == ring);
    let jf = jf_matrix(j, n);
    let assembled = if jf.cols() == 0 { lifted.clone() } else { lifted.hstack(&jf) };
    let gens = prune_module_generators(&assembled)?;
    let module = ModuleHandle::new(gens.clone());
    // every J F generator must lie in the pruned span
    let mut content_cols: Vec<Vec<Poly>> = Vec::new();
    for k in 0..jf.cols() {
        let col = jf.col(k);
        let lift = module.lift(&col).map_err(|e| match e {
            Error::NotInModule => {
                Error::LiftFailure("a J*F generator left the span while pruning".into())
            }
            other => other,
        })?;
        content_cols.push(lift);
    }
    let content = if content_cols.is_empty() {
        PolyMatrix::from_fn(ring.clone(), gens.cols(), 0, |_, _| ring.zero())
    } else {
        PolyMatrix::from_cols(ring.clone(), content_cols)
    };
    let deformation = EmbeddedDeformation {
        ring,
        j_ideal: j.clone(),
        ambient_rank: n,
        gens,
        content,
        module,
        var_prefix: var_prefix.to_string(),
        var_names: None,
    };
    debug_assert!(deformation.verify_content());
    Ok(deformation)
}

/// The assembled Aluffi presentation: the defining ideal in `R[y]`, the
/// Rees-over-the-quotient comparison ideal, and the algebra report.
#[derive(Debug)]
pub struct AluffiPresentation {
    pub extension: Extension,
    pub module: PresentedModule,
    pub rees_ideal: IdealHandle,
    pub ideal: IdealHandle,
    pub rees_over_quotient: IdealHandle,
    pub surjects_onto_rees: bool,
    pub report: AlgebraReport,
}

/// `A = rees(E) + J + I_1(y . Psi)`, with the full report and the check that
/// the quotient surjects onto the Rees algebra over `R/J` (containment of
/// the defining ideal in the elimination-computed one).
pub fn aluffi_ideal(d: &EmbeddedDeformation) -> Result<AluffiPresentation> {
    let module = d.presented_module()?;
    let ext = module.extension().clone();
    let rees = module.rees_ideal()?;
    let mut gens: Vec<Poly> = rees.generators().to_vec();
    for g in d.j_ideal().generators() {
        gens.push(g.lift_to(&ext.ring)?);
    }
    let y = ext.y_vars();
    let psi = d.content_matrix().lift_to(&ext.ring)?;
    if psi.cols() > 0 {
        for entry in PolyMatrix::row_vec_mul(&y, &psi) {
            gens.push(entry);
        }
    }
    let ideal = IdealHandle::new(ext.ring.clone(), linear_prereduce(&ext.ring, gens));
    let rees_over_quotient =
        rees_ideal_of_matrix(d.gens(), &ext, d.j_ideal().generators())?;
    let surjects = rees_over_quotient.contains_ideal(&ideal)?;
    let report = cm_report(&ideal)?;
    Ok(AluffiPresentation {
        extension: ext,
        module,
        rees_ideal: rees,
        ideal,
        rees_over_quotient,
        surjects_onto_rees: surjects,
        report,
    })
}

/// Dev-only: assemble the Aluffi ideal without the report or the
/// rees-over-quotient comparison.
#[doc(hidden)]
pub fn aluffi_ideal_parts_for_debug(d: &EmbeddedDeformation) -> Result<IdealHandle> {
    let module = d.presented_module()?;
    let ext = module.extension().clone();
    let rees = module.rees_ideal()?;
    let mut gens: Vec<Poly> = rees.generators().to_vec();
    for g in d.j_ideal().generators() {
        gens.push(g.lift_to(&ext.ring)?);
    }
    let y = ext.y_vars();
    let psi = d.content_matrix().lift_to(&ext.ring)?;
    if psi.cols() > 0 {
        for entry in PolyMatrix::row_vec_mul(&y, &psi) {
            gens.push(entry);
        }
    }
    Ok(IdealHandle::new(ext.ring.clone(), linear_prereduce(&ext.ring, gens)))
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DimensionBounds {
    pub lower: i64,
    pub upper: i64,
    pub actual: i64,
    pub within: bool,
    pub dim_base: i64,
    pub fitting_defect_over_quotient: i64,
}

/// `d + r <= dim A(E) <= min(d + n + g, d + r + df(E))`, with `d = dim R/J`,
/// `r` the rank of `E` over `R/J` and `df` the Fitting defect of `E` over
/// `R/J` (presentation by syzygies modulo `J`).
pub fn dimension_bounds(
    d: &EmbeddedDeformation,
    pres: &AluffiPresentation,
    rank_over_quotient: usize,
    height_j: i64,
) -> Result<DimensionBounds> {
    let dim_base = krull_dim(d.j_ideal())?;
    let n = d.ambient_rank() as i64;
    let r = rank_over_quotient as i64;
    let df = fitting_defect_over_quotient(d, rank_over_quotient)?;
    let lower = dim_base + r;
    let upper = (dim_base + n + height_j).min(dim_base + r + df);
    let actual = pres.report.dim;
    Ok(DimensionBounds {
        lower,
        upper,
        actual,
        within: lower <= actual && actual <= upper,
        dim_base,
        fitting_defect_over_quotient: df,
    })
}

/// Fitting defect of `E = coker` over `A = R/J`: sweep the Fitting ideals of
/// an `A`-presentation of `E`, with codimensions measured over `A` as
/// `codim_R(I_t + J) - codim_R(J)`.
pub fn fitting_defect_over_quotient(
    d: &EmbeddedDeformation,
    rank_over_quotient: usize,
) -> Result<i64> {
    let phi = presentation_over_quotient(d)?;
    let m = d.gens().cols();
    if rank_over_quotient > m {
        return Err(Error::Invalid("rank exceeds the number of generators".into()));
    }
    let rank_phi = m - rank_over_quotient;
    let g = codim_loose(d.j_ideal())?;
    let mut df = 0i64;
    for t in 1..=rank_phi {
        let mut gens = minors(&phi, t)?;
        for j in d.j_ideal().generators() {
            gens.push(j.clone());
        }
        let it = IdealHandle::new(d.ring().clone(), linear_prereduce(d.ring(), gens));
        let codim_a = codim_loose(&it)? - g;
        df = df.max(rank_phi as i64 - t as i64 + 1 - codim_a);
    }
    Ok(df.max(0))
}

/// Syzygies of the generator columns over `R/J`: vectors `v` with
/// `G . v ∈ J R^n`, found from the syzygies of `[G | J F]` by projecting to
/// the `G`-block coordinates.
pub fn presentation_over_quotient(d: &EmbeddedDeformation) -> Result<PolyMatrix> {
    let g = d.gens();
    let jf = jf_matrix(d.j_ideal(), d.ambient_rank());
    let augmented = if jf.cols() == 0 { g.clone() } else { g.hstack(&jf) };
    let syz = ModuleHandle::new(augmented).syzygies()?;
    let m = g.cols();
    if syz.cols() == 0 {
        return Ok(PolyMatrix::from_fn(g.ring().clone(), m, 0, |_, _| g.ring().zero()));
    }
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..syz.cols()).collect();
    Ok(syz.submatrix(&rows, &cols))
}

/// Exponent sweep: the least `e <= max_e` with `x_i^e` in the ideal, per
/// base variable; `None` marks a failure (radical does not visibly contain
/// that variable within the sweep).
pub fn radical_contains_base_vars(
    ideal: &IdealHandle,
    ext: &Extension,
    max_e: u32,
) -> Result<Vec<(String, Option<u32>)>> {
    let mut out = Vec::new();
    for i in ext.x_indices() {
        let x = ext.ring.var(i);
        let mut found = None;
        for e in 1..=max_e {
            if ideal.contains(&x.pow(e))? {
                found = Some(e);
                break;
            }
        }
        out.push((ext.ring.var_names()[i].clone(), found));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str, r: &PolyRing) -> Poly {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn full_module_prunes_to_identity() {
        // E = (R/J)^2 lifted as the identity: J F columns are redundant
        let r = PolyRing::new(&["x", "y"]);
        let j = IdealHandle::new(r.clone(), vec![p("x^2", &r)]);
        let lifted = PolyMatrix::identity(r.clone(), 2);
        let d = deform_from_quotient(&j, 2, &lifted, "u").unwrap();
        assert_eq!(d.gens().cols(), 2);
        assert!(d.verify_content());
        // content expresses x^2 e_i through the identity columns
        assert_eq!(*d.content_matrix().entry(0, 0), p("x^2", &r));
    }

    #[test]
    fn hypersurface_free_module_aluffi() {
        // J = (x^2), E = (R/J)^1: the Aluffi ideal is (x^2) plus x^2*u1
        let r = PolyRing::new(&["x", "y"]);
        let j = IdealHandle::new(r.clone(), vec![p("x^2", &r)]);
        let lifted = PolyMatrix::identity(r.clone(), 1);
        let d = deform_from_quotient(&j, 1, &lifted, "u").unwrap();
        let pres = aluffi_ideal(&d).unwrap();
        assert!(pres.surjects_onto_rees);
        // free module over the quotient: bounds collapse to dim A + rank
        let bounds = dimension_bounds(&d, &pres, 1, 1).unwrap();
        assert_eq!(bounds.lower, 2);
        assert_eq!(bounds.actual, 2);
        assert!(bounds.within);
        assert_eq!(bounds.upper, bounds.lower);
    }

    #[test]
    fn aluffi_contains_rees_and_j() {
        let r = PolyRing::new(&["x", "y"]);
        let j = IdealHandle::new(r.clone(), vec![p("x*y", &r)]);
        // lift of the ideal module (x, y) over R/(xy)
        let lifted = PolyMatrix::from_rows(r.clone(), vec![vec![r.var(0), r.var(1)]]);
        let d = deform_from_quotient(&j, 1, &lifted, "u").unwrap();
        let pres = aluffi_ideal(&d).unwrap();
        assert!(pres.ideal.contains_ideal(&pres.rees_ideal).unwrap());
        let j_lift = p("x*y", &pres.extension.ring);
        assert!(pres.ideal.contains(&j_lift).unwrap());
        assert!(pres.surjects_onto_rees);
        let bounds = dimension_bounds(&d, &pres, 1, 1).unwrap();
        assert!(bounds.within);
    }
}
