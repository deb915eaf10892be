// Dev scratch: step sizes of the Aluffi resolution for the nodal cubic.

use std::time::Instant;

use blowup_core::aluffi::{aluffi_ideal_parts_for_debug, deform_from_quotient};
use blowup_core::derivations::log_derivations;
use blowup_core::groebner::{module_syzygies, IdealHandle};
use blowup_core::matrix::PolyMatrix;
use blowup_core::parse::parse_poly;
use blowup_core::ring::PolyRing;

fn main() {
    let r = PolyRing::new(&["x", "y", "z"]);
    let f = parse_poly("y^2*z - x^3 - x^2*z", &r).unwrap();
    let ders = log_derivations(&f).unwrap();
    let j = IdealHandle::new(r.clone(), vec![f.clone()]);
    let d = deform_from_quotient(&j, 3, &ders, "u").unwrap();
    let ideal = aluffi_ideal_parts_for_debug(&d).unwrap();
    let ring = ideal.ring().clone();
    let mins = ideal.minimal_generators().unwrap();
    println!("A minimal generators: {}", mins.len());
    for g in &mins {
        println!("  deg {} terms {}", g.weighted_degree().unwrap(), g.num_terms());
    }
    let mut cur = PolyMatrix::from_rows(ring.clone(), vec![mins]);
    for step in 1..=9 {
        let t0 = Instant::now();
        let syz = module_syzygies(&cur).unwrap();
        println!(
            "step {step}: syz of {}x{} -> {} columns in {:?}",
            cur.rows(),
            cur.cols(),
            syz.cols(),
            t0.elapsed()
        );
        if syz.cols() == 0 {
            break;
        }
        let maxdeg = (0..syz.cols())
            .flat_map(|j| (0..syz.rows()).map(move |i| (i, j)))
            .map(|(i, j)| syz.entry(i, j).max_degree())
            .max()
            .unwrap_or(0);
        let maxterms = (0..syz.cols())
            .flat_map(|j| (0..syz.rows()).map(move |i| (i, j)))
            .map(|(i, j)| syz.entry(i, j).num_terms())
            .max()
            .unwrap_or(0);
        println!("   max entry degree {maxdeg}, max terms {maxterms}");
        cur = syz;
    }
}
