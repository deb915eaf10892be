// Dev scratch: chase the rees-over-quotient containment failure.

use blowup_core::aluffi::{aluffi_ideal, deform_from_quotient};
use blowup_core::blowup::rees_ideal_of_matrix;
use blowup_core::groebner::IdealHandle;
use blowup_core::matrix::{koszul1, PolyMatrix};
use blowup_core::parse::parse_poly;
use blowup_core::ring::PolyRing;

fn main() {
    let r = PolyRing::new(&["x", "y", "z"]);
    let f = parse_poly("x^3 + y^3 + z^3", &r).unwrap();
    let grad: Vec<_> = (0..3).map(|i| f.derivative(i)).collect();
    let gz = koszul1(&r, &grad);
    let euler = PolyMatrix::from_fn(r.clone(), 3, 1, |i, _| r.var(i));
    let gens = gz.hstack(&euler);
    let j = IdealHandle::new(r.clone(), vec![f.clone()]);
    let deformation = deform_from_quotient(&j, 3, &gens, "y").unwrap();
    let names = vec!["y12".into(), "y13".into(), "y23".into(), "T".into()];
    let deformation = deformation.with_var_names(names);
    let pres = aluffi_ideal(&deformation).unwrap();
    let ext = pres.extension.clone();
    println!("ext ring: {}", ext.ring);
    println!("A generators:");
    for g in pres.ideal.generators() {
        println!("  {g}");
    }
    let k = rees_ideal_of_matrix(deformation.gens(), &ext, j.generators()).unwrap();
    println!("K ring: {}", k.ring());
    println!("K generators ({}):", k.generators().len());
    for g in k.generators().iter().take(10) {
        println!("  {g}");
    }
    println!("K contains f: {:?}", k.contains(&f.lift_to(&ext.ring).unwrap()));
    for (i, g) in pres.ideal.generators().iter().enumerate() {
        let inside = k.contains(g).unwrap();
        if !inside {
            println!("NOT CONTAINED gen {i}: {g}");
        }
    }
    println!("rees ideal gens:");
    for g in pres.rees_ideal.generators() {
        println!("  {g}");
        println!("    in K: {:?}", k.contains(g).unwrap());
    }
}
