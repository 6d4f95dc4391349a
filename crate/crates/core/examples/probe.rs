use locb_core::alg::Coef;
use locb_core::mpoly::MPoly;
use locb_core::rat::rat_int;
use locb_core::ratfunc::RationalFunction;
use locb_core::report;
use locb_core::resolve::{self, ResolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32, nonzero: bool) -> MPoly {
    loop {
        let mut terms: Vec<(Vec<u32>, Coef)> = Vec::new();
        for i in 0..=max_deg {
            for j in 0..=(max_deg - i) {
                if rng.gen_bool(0.4) {
                    let c = rng.gen_range(-3..=3i64);
                    if c != 0 {
                        terms.push((vec![i, j], Coef::from_int(c)));
                    }
                }
            }
        }
        let p = MPoly::from_terms(2, terms);
        if !p.is_zero() || !nonzero {
            return p;
        }
    }
}

fn random_bounded(rng: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let a = random_poly(rng, 2, false);
        let b = random_poly(rng, 2, true);
        let den = a.mul(&a).add(&b.mul(&b));
        let num = a.mul(&a);
        if let Ok(core) = RationalFunction::new(num, den) {
            let c = rat_int(rng.gen_range(-2..=2));
            return core.add(&RationalFunction::constant(2, Coef::from_rat(c)));
        }
    }
}

fn main() {
    let opts = ResolveOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let all = Instant::now();
    for i in 0..40 {
        let f = random_bounded(&mut rng);
        let t0 = Instant::now();
        let ind = f.indeterminacy_points().unwrap();
        let t1 = t0.elapsed();
        let t0 = Instant::now();
        let v = resolve::is_locally_bounded(&f, &opts);
        let t2 = t0.elapsed();
        if t1.as_millis() + t2.as_millis() > 300 {
            let heights: Vec<u32> = ind.iter().map(|p| p.iter().map(|c| c.tower().map(|t| t.height).unwrap_or(0)).max().unwrap_or(0)).collect();
            println!(
                "case {i}: indet {t1:?} ({} pts, heights {heights:?}) decide {t2:?} ok={} f = {}",
                ind.len(),
                v.is_ok(),
                report::fraction_text(&f)
            );
        }
    }
    println!("total {:?}", all.elapsed());
}
