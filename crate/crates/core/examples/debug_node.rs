// Dev scratch: stage timings for the nodal cubic.

use std::time::Instant;

use blowup_core::aluffi::{aluffi_ideal, deform_from_quotient};
use blowup_core::derivations::log_derivations;
use blowup_core::groebner::IdealHandle;
use blowup_core::invariants::{cm_report, krull_dim};
use blowup_core::parse::parse_poly;
use blowup_core::ring::PolyRing;

fn main() {
    let r = PolyRing::new(&["x", "y", "z"]);
    let f = parse_poly("y^2*z - x^3 - x^2*z", &r).unwrap();
    let t0 = Instant::now();
    let ders = log_derivations(&f).unwrap();
    println!("log_derivations: {:?}, {} gens", t0.elapsed(), ders.cols());
    for j in 0..ders.cols() {
        let col = ders.col(j);
        println!("  gen {j}: ({})", col.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
    }
    let j = IdealHandle::new(r.clone(), vec![f.clone()]);
    let t0 = Instant::now();
    let d = deform_from_quotient(&j, 3, &ders, "u").unwrap();
    println!("deform: {:?}, {} gens kept", t0.elapsed(), d.gens().cols());
    let module = d.presented_module().unwrap();
    let t0 = Instant::now();
    let sym = module.symmetric_ideal().unwrap();
    println!("sym: {:?}, {} gens", t0.elapsed(), sym.generators().len());
    let t0 = Instant::now();
    let rees = module.rees_ideal().unwrap();
    println!("rees: {:?}, {} gens", t0.elapsed(), rees.generators().len());
    let t0 = Instant::now();
    let gb = rees.gb_default().unwrap();
    println!("rees gb: {:?}, {} elements", t0.elapsed(), gb.len());
    let t0 = Instant::now();
    let dim = krull_dim(&rees).unwrap();
    println!("rees dim: {:?} -> {}", t0.elapsed(), dim);
    let t0 = Instant::now();
    let rep = cm_report(&rees).unwrap();
    println!("rees cm_report: {:?} cm={} totals={:?}", t0.elapsed(), rep.is_cm, rep.betti_totals);
    // staged aluffi_ideal
    use blowup_core::blowup::rees_ideal_of_matrix;
    use blowup_core::groebner::linear_prereduce;
    use blowup_core::matrix::PolyMatrix;
    let ext = module.extension().clone();
    let mut gens: Vec<_> = rees.generators().to_vec();
    gens.push(f.lift_to(&ext.ring).unwrap());
    let y = ext.y_vars();
    let psi = d.content_matrix().lift_to(&ext.ring).unwrap();
    gens.extend(PolyMatrix::row_vec_mul(&y, &psi));
    let ideal = IdealHandle::new(ext.ring.clone(), linear_prereduce(&ext.ring, gens));
    let t0 = Instant::now();
    let gb = ideal.gb_default().unwrap();
    println!("A gb: {:?}, {} elements", t0.elapsed(), gb.len());
    let t0 = Instant::now();
    let dim = krull_dim(&ideal).unwrap();
    println!("A dim: {:?} -> {}", t0.elapsed(), dim);
    let t0 = Instant::now();
    let k = rees_ideal_of_matrix(d.gens(), &ext, j.generators()).unwrap();
    println!("rees over quotient: {:?}, {} gens", t0.elapsed(), k.generators().len());
    let t0 = Instant::now();
    let surj = k.contains_ideal(&ideal).unwrap();
    println!("surjection check: {:?} -> {}", t0.elapsed(), surj);
    let t0 = Instant::now();
    let rep = cm_report(&ideal).unwrap();
    println!("A cm_report: {:?} dim={} codim={} cm={} almost={}", t0.elapsed(), rep.dim, rep.codim, rep.is_cm, rep.is_almost_cm);
    let t0 = Instant::now();
    let pres = aluffi_ideal(&d).unwrap();
    println!("aluffi_ideal total: {:?}", t0.elapsed());
    let a = &pres.report;
    println!("A: dim={} codim={} cm={} almost={}", a.dim, a.codim, a.is_cm, a.is_almost_cm);
}
// staged duplicate of aluffi_ideal for timing
