mod common;

use locb_core::geometry;
use locb_core::ratfunc::RationalFunction;
use locb_core::report;
use locb_core::resolve::ResolveOptions;
use locb_core::Error;
use std::time::Instant;

#[test]
#[ignore]
fn probe_union_law() {
    let opts = ResolveOptions::default();
    let mut rng = common::seeded(0x5eed_0001);
    let mut pairs: Vec<(String, RationalFunction, RationalFunction)> = Vec::new();
    let pool = common::bounded_plane_gallery(&opts);
    for (i, a) in pool.iter().enumerate() {
        let j1 = (i + 1) % pool.len();
        let j3 = (i + 3) % pool.len();
        pairs.push((format!("pool {i} {j1}"), a.clone(), pool[j1].clone()));
        pairs.push((format!("pool {i} {j3}"), a.clone(), pool[j3].clone()));
    }
    let mut alt = false;
    let cases = 100;
    while pairs.len() < cases + 2 * pool.len() {
        alt = !alt;
        let (tag, f, g) = if alt {
            (
                "randb",
                common::random_bounded(&mut rng),
                common::random_bounded(&mut rng),
            )
        } else {
            (
                "randf",
                common::random_function(&mut rng, 2),
                common::random_function(&mut rng, 2),
            )
        };
        if f.num().is_zero() || g.num().is_zero() {
            continue;
        }
        pairs.push((format!("{tag} {}", pairs.len()), f, g));
    }
    let all = Instant::now();
    for (tag, f, g) in &pairs {
        let t0 = Instant::now();
        let prod = f.mul(g);
        for h in [f, g, &prod] {
            if matches!(geometry::zero_set(h, &opts), Err(Error::NotLocallyBounded)) {
                break;
            }
        }
        let ms = t0.elapsed().as_millis();
        if ms > 400 {
            println!(
                "SLOW {tag} {ms} ms ~ {} ~ {}",
                report::fraction_text(f),
                report::fraction_text(g)
            );
        }
    }
    println!("ALLDONE {} ms", all.elapsed().as_millis());
}
