// Dev scratch runner for the heavy pipelines.

use std::time::Instant;

use blowup_core::derivations::{pfaffian_rees_verify, singular_aluffi, smooth_aluffi};
use blowup_core::parse::parse_poly;
use blowup_core::ring::PolyRing;

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "fermat".into());
    match which.as_str() {
        "fermat" => {
            let r = PolyRing::new(&["x", "y", "z"]);
            let f = parse_poly("x^3 + y^3 + z^3", &r).unwrap();
            let t0 = Instant::now();
            let rep = smooth_aluffi(&f).unwrap();
            println!("smooth_aluffi(fermat cubic) in {:?}", t0.elapsed());
            println!(
                "explicit={} claim={} cylinder={} saturation={} homog={}",
                rep.explicit_presentation_matches,
                rep.jacobian_duality_claim,
                rep.rees_is_cylinder_over_z,
                rep.saturation_matches,
                rep.weighted_homogeneous
            );
            let a = &rep.presentation.report;
            println!(
                "dim={} (exp {}), codim={} (exp {}), gorenstein={}, pd={}, totals={:?}",
                a.dim, rep.expected_dim, a.codim, rep.expected_codim, a.is_gorenstein, a.pd, a.betti_totals
            );
            println!("surjects onto rees-over-quotient: {}", rep.presentation.surjects_onto_rees);
        }
        "pfaff4" => {
            let r = PolyRing::new(&["x1", "x2", "x3", "x4"]);
            let f: Vec<_> = (0..4).map(|i| r.var(i).pow(2)).collect();
            let t0 = Instant::now();
            let rep = pfaffian_rees_verify(&f).unwrap();
            println!("pfaffian_rees_verify(n=4 squares) in {:?}", t0.elapsed());
            println!(
                "match={} codim={} (exp {}) gorenstein={} census={:?}",
                rep.ideals_match, rep.codim, rep.expected_codim, rep.report.is_gorenstein, rep.census
            );
        }
        "cusp" => {
            let r = PolyRing::new(&["x", "y", "z"]);
            let f = parse_poly("y^2*z - x^3", &r).unwrap();
            let t0 = Instant::now();
            let rep = singular_aluffi(&f).unwrap();
            println!("singular_aluffi(cusp) in {:?}", t0.elapsed());
            let a = &rep.presentation.report;
            println!(
                "A: dim={} codim={} cm={} gor={} almost={}",
                a.dim, a.codim, a.is_cm, a.is_gorenstein, a.is_almost_cm
            );
            println!(
                "rees: min_gens={} codim={} cm={}",
                rep.rees_min_gens, rep.rees_codim, rep.rees_report.is_cm
            );
            let q = &rep.rees_over_quotient_report;
            println!("rees/quotient: dim={} cm={} almost={}", q.dim, q.is_cm, q.is_almost_cm);
        }
        "node" => {
            let r = PolyRing::new(&["x", "y", "z"]);
            let f = parse_poly("y^2*z - x^3 - x^2*z", &r).unwrap();
            let t0 = Instant::now();
            let rep = singular_aluffi(&f).unwrap();
            println!("singular_aluffi(node) in {:?}", t0.elapsed());
            let a = &rep.presentation.report;
            println!(
                "A: dim={} codim={} cm={} gor={} almost={}",
                a.dim, a.codim, a.is_cm, a.is_gorenstein, a.is_almost_cm
            );
            println!(
                "rees: min_gens={} codim={} cm={} gor={}",
                rep.rees_min_gens, rep.rees_codim, rep.rees_report.is_cm, rep.rees_report.is_gorenstein
            );
            let q = &rep.rees_over_quotient_report;
            println!("rees/quotient: dim={} cm={} almost={}", q.dim, q.is_cm, q.is_almost_cm);
        }
        other => eprintln!("unknown case {other}"),
    }
}
