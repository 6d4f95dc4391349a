//! Constructors for functions with prescribed arcwise zero sets, and a small
//! gallery of plane examples.
//!
//! The plateau weight x^2/(x^2+y^2) has value interval [0, 1] at the origin,
//! one value per direction of approach.  Matching a coordinate against it
//! carves out a segment; matching against 2z/(1+z^2), whose range on z >= 0
//! is the same interval, carves out a closed half line.  Sums of squares of
//! such blocks then encode products, orthants, and arbitrary closed
//! semialgebraic sets in higher dimensions.

use crate::alg::Coef;
use crate::mpoly::MPoly;
use crate::rat::rat;
use crate::ratfunc::RationalFunction;
use crate::{internal, Result};

/// x^2/(x^2+y^2) on the plane.
pub fn plateau() -> RationalFunction {
    let num = MPoly::from_int_terms(2, &[(&[2, 0], 1)]);
    let den = MPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn embed_rf(f: &RationalFunction, nvars: usize, map: &[usize]) -> RationalFunction {
    RationalFunction::new(f.num().embed(nvars, map), f.den().embed(nvars, map))
        .expect("embedding keeps the denominator nonzero")
}

fn sum_xy_squares(nvars: usize, ix: usize, iy: usize) -> MPoly {
    let mut ex = vec![0u32; nvars];
    ex[ix] = 2;
    let mut ey = vec![0u32; nvars];
    ey[iy] = 2;
    MPoly::from_terms(
        nvars,
        vec![(ex, Coef::one()), (ey, Coef::one())],
    )
}

/// (z - x^2/(x^2+y^2))^2 + x^2 + y^2 in three variables.  Its arcwise zero
/// set is the closed vertical segment {(0, 0, c) : 0 <= c <= 1}.
pub fn segment_function() -> RationalFunction {
    let f1 = embed_rf(&plateau(), 3, &[0, 1]);
    let z = RationalFunction::from_poly(MPoly::var(3, 2));
    let diff = z.sub(&f1);
    diff.mul(&diff)
        .add(&RationalFunction::from_poly(sum_xy_squares(3, 0, 1)))
}

/// (2z/(1+z^2) - x^2/(x^2+y^2))^2 + x^2 + y^2 in three variables.  The
/// rational map 2z/(1+z^2) sends z >= 0 onto [0, 1], so the arcwise zero
/// set is the closed half line {(0, 0, c) : c >= 0}.
pub fn semiline_function() -> RationalFunction {
    let f1 = embed_rf(&plateau(), 3, &[0, 1]);
    let num = MPoly::from_int_terms(3, &[(&[0, 0, 1], 2)]);
    let den = MPoly::from_int_terms(3, &[(&[0, 0, 0], 1), (&[0, 0, 2], 1)]);
    let w = RationalFunction::new(num, den).expect("1 + z^2 is nonzero");
    let diff = w.sub(&f1);
    diff.mul(&diff)
        .add(&RationalFunction::from_poly(sum_xy_squares(3, 0, 1)))
}

/// Function on m+n variables whose arcwise zero set is the product of the
/// zero sets of f (first m variables) and g (last n variables).
pub fn product_zero_function(
    f: &RationalFunction,
    g: &RationalFunction,
) -> RationalFunction {
    let m = f.nvars();
    let n = g.nvars();
    let total = m + n;
    let fmap: Vec<usize> = (0..m).collect();
    let gmap: Vec<usize> = (m..total).collect();
    let fe = embed_rf(f, total, &fmap);
    let ge = embed_rf(g, total, &gmap);
    fe.mul(&fe).add(&ge.mul(&ge))
}

/// Function on 3k variables, grouped in blocks (s_i, t_i, y_i), whose
/// arcwise zero set is {s = t = 0, y_1 >= 0, ..., y_k >= 0}: the closed
/// nonnegative orthant in the y coordinates.
pub fn orthant_zero_function(k: usize) -> Result<RationalFunction> {
    if k == 0 {
        return Err(internal("orthant needs at least one block"));
    }
    let total = 3 * k;
    let half = semiline_function();
    let mut acc = RationalFunction::zero(total);
    for i in 0..k {
        let map = [3 * i, 3 * i + 1, 3 * i + 2];
        let block = embed_rf(&half, total, &map);
        acc = acc.add(&block);
    }
    Ok(acc)
}

/// Encoding of the closed set {x : p_1(x) >= 0, ..., p_k(x) >= 0} as an
/// arcwise zero set in n + 3k variables.  The first n coordinates are the
/// original ones; block i appends (s_i, t_i, y_i).  `h` vanishes exactly on
/// the image of the set under `embedding`, and `projection` recovers x.
#[derive(Debug, Clone)]
pub struct EncodedSet {
    pub ambient: usize,
    pub h: RationalFunction,
    /// Polynomial components of the embedding, in the original n variables.
    pub embedding: Vec<MPoly>,
    /// Indices of the coordinates holding the original point.
    pub projection: Vec<usize>,
}

pub fn encode_closed_sa_set(ineqs: &[MPoly]) -> Result<EncodedSet> {
    let k = ineqs.len();
    if k == 0 {
        return Err(internal("need at least one inequality"));
    }
    let n = ineqs[0].nvars();
    if ineqs.iter().any(|p| p.nvars() != n) {
        return Err(internal("inequalities must share one variable set"));
    }
    let ambient = n + 3 * k;
    let base_map: Vec<usize> = (0..n).collect();

    // h1 ties y_i to p_i(x).
    let mut h1 = MPoly::zero(ambient);
    for (i, p) in ineqs.iter().enumerate() {
        let tie = p
            .embed(ambient, &base_map)
            .sub(&MPoly::var(ambient, n + 3 * i + 2));
        h1 = h1.add(&tie.mul(&tie));
    }
    // h2 forces s_i = t_i = 0 and y_i >= 0.
    let half = semiline_function();
    let mut h2 = RationalFunction::zero(ambient);
    for i in 0..k {
        let map = [n + 3 * i, n + 3 * i + 1, n + 3 * i + 2];
        h2 = h2.add(&embed_rf(&half, ambient, &map));
    }
    let h1rf = RationalFunction::from_poly(h1);
    let h = h1rf.mul(&h1rf).add(&h2.mul(&h2));

    let mut embedding = Vec::with_capacity(ambient);
    for j in 0..n {
        embedding.push(MPoly::var(n, j));
    }
    for p in ineqs {
        embedding.push(MPoly::zero(n));
        embedding.push(MPoly::zero(n));
        embedding.push(p.clone());
    }
    let projection: Vec<usize> = (0..n).collect();
    for (j, &idx) in projection.iter().enumerate() {
        let got = &embedding[idx];
        if !got.sub(&MPoly::var(n, j)).is_zero() {
            return Err(internal("projection does not invert the embedding"));
        }
    }
    Ok(EncodedSet {
        ambient,
        h,
        embedding,
        projection,
    })
}

#[derive(Debug, Clone)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub function: RationalFunction,
}

pub fn gallery() -> Vec<GalleryEntry> {
    let circle = MPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 2], 1)]);
    let mk = |num: MPoly, den: MPoly| RationalFunction::new(num, den).unwrap();
    let tilted = {
        let f1 = embed_rf(&plateau(), 3, &[0, 1]);
        let z = RationalFunction::from_poly(MPoly::var(3, 2));
        let diff = z.sub(&f1.mul(&RationalFunction::constant(3, Coef::from_rat(rat(1, 2)))));
        diff.mul(&diff)
            .add(&RationalFunction::from_poly(sum_xy_squares(3, 0, 1)))
    };
    vec![
        GalleryEntry {
            name: "plateau",
            description: "x^2/(x^2+y^2); bounded, value interval [0, 1] at the origin",
            function: plateau(),
        },
        GalleryEntry {
            name: "plateau-y",
            description: "y^2/(x^2+y^2); the complementary direction weight",
            function: mk(MPoly::from_int_terms(2, &[(&[0, 2], 1)]), circle.clone()),
        },
        GalleryEntry {
            name: "pole",
            description: "x/(x^2+y^2); unbounded at the origin with order -1 arcs",
            function: mk(MPoly::from_int_terms(2, &[(&[1, 0], 1)]), circle.clone()),
        },
        GalleryEntry {
            name: "flat",
            description: "x^4/(x^2+y^2); bounded with the single limit 0 at the origin",
            function: mk(MPoly::from_int_terms(2, &[(&[4, 0], 1)]), circle.clone()),
        },
        GalleryEntry {
            name: "saddle",
            description: "xy/(x^2+y^2); value interval [-1/2, 1/2] at the origin",
            function: mk(MPoly::from_int_terms(2, &[(&[1, 1], 1)]), circle.clone()),
        },
        GalleryEntry {
            name: "norm-ratio",
            description: "(x^4+y^4)/(x^2+y^2)^2; value interval [1/2, 1], invertible",
            function: mk(
                MPoly::from_int_terms(2, &[(&[4, 0], 1), (&[0, 4], 1)]),
                circle.mul(&circle),
            ),
        },
        GalleryEntry {
            name: "dip-y",
            description: "(x^2+y^4)/(x^2+y^2); limit 0 at the origin only along the y-axis",
            function: mk(
                MPoly::from_int_terms(2, &[(&[2, 0], 1), (&[0, 4], 1)]),
                circle.clone(),
            ),
        },
        GalleryEntry {
            name: "dip-x",
            description: "(x^4+y^2)/(x^2+y^2); limit 0 at the origin only along the x-axis",
            function: mk(
                MPoly::from_int_terms(2, &[(&[4, 0], 1), (&[0, 2], 1)]),
                circle.clone(),
            ),
        },
        GalleryEntry {
            name: "offset-plateau",
            description: "x^2/(x^2+(y-1)^2); the plateau weight moved to (0, 1)",
            function: mk(
                MPoly::from_int_terms(2, &[(&[2, 0], 1)]),
                MPoly::from_int_terms(
                    2,
                    &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 1], -2), (&[0, 0], 1)],
                ),
            ),
        },
        GalleryEntry {
            name: "segment",
            description: "(z - x^2/(x^2+y^2))^2 + x^2 + y^2; zero set is the segment (0,0,[0,1])",
            function: segment_function(),
        },
        GalleryEntry {
            name: "half-line",
            description: "(2z/(1+z^2) - x^2/(x^2+y^2))^2 + x^2 + y^2; zero set is (0,0,[0,inf))",
            function: semiline_function(),
        },
        GalleryEntry {
            name: "half-segment",
            description: "(z - x^2/(2(x^2+y^2)))^2 + x^2 + y^2; zero set is the segment (0,0,[0,1/2])",
            function: tilted,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alg::{extend, RealRoot};
    use crate::arcs::{compose, Arc, PuiseuxPoly};
    use crate::rat::{rat, rat_int, BigRat};
    use crate::unipoly::UniPoly;
    use num_traits::One;

    fn t_pow(e: BigRat, c: Coef) -> PuiseuxPoly {
        PuiseuxPoly::monomial(e, c)
    }

    fn t1(c: Coef) -> PuiseuxPoly {
        t_pow(BigRat::one(), c)
    }

    fn konst(c: Coef) -> PuiseuxPoly {
        PuiseuxPoly::constant(c)
    }

    fn arc(entries: Vec<PuiseuxPoly>) -> Arc {
        Arc::new(entries).unwrap()
    }

    #[test]
    fn segment_zero_arcs() {
        let f = segment_function();
        // bottom endpoint, tangential approach
        let a0 = arc(vec![
            t_pow(rat_int(2), Coef::one()),
            t1(Coef::one()),
            konst(Coef::zero()),
        ]);
        assert!(compose(&f, &a0).unwrap().in_zero_set());
        // interior point 1/2 along the diagonal
        let a1 = arc(vec![
            t1(Coef::one()),
            t1(Coef::one()),
            konst(Coef::from_rat(rat(1, 2))),
        ]);
        assert!(compose(&f, &a1).unwrap().in_zero_set());
        // top endpoint along the x axis
        let a2 = arc(vec![t1(Coef::one()), konst(Coef::zero()), konst(Coef::one())]);
        assert!(compose(&f, &a2).unwrap().in_zero_set());
    }

    #[test]
    fn segment_zero_arc_with_algebraic_slope() {
        // direction (1, sqrt 3) gives the plateau limit 1/4
        let tw = extend(
            None,
            RealRoot {
                poly: UniPoly::from_coefs(vec![Coef::from_int(-3), Coef::zero(), Coef::one()]),
                lo: rat_int(1),
                hi: rat_int(2),
            },
        );
        let s3 = Coef::generator(&tw);
        let f = segment_function();
        let a = arc(vec![
            t1(Coef::one()),
            t1(s3),
            konst(Coef::from_rat(rat(1, 4))),
        ]);
        assert!(compose(&f, &a).unwrap().in_zero_set());
    }

    #[test]
    fn segment_misses_points_off_the_bar() {
        let f = segment_function();
        for z0 in [Coef::from_int(2), Coef::from_int(-1)] {
            let a = arc(vec![t1(Coef::one()), konst(Coef::zero()), konst(z0.clone())]);
            assert!(!compose(&f, &a).unwrap().in_zero_set());
            let b = arc(vec![
                t_pow(rat_int(2), Coef::one()),
                t1(Coef::one()),
                konst(z0),
            ]);
            assert!(!compose(&f, &b).unwrap().in_zero_set());
        }
    }

    #[test]
    fn semiline_reaches_large_heights() {
        let f = semiline_function();
        // height 2 via direction (2, 1): ratio 4/5 = 2*2/(1+4)
        let a = arc(vec![
            t1(Coef::from_int(2)),
            t1(Coef::one()),
            konst(Coef::from_int(2)),
        ]);
        assert!(compose(&f, &a).unwrap().in_zero_set());
        // height 1 along the x axis
        let b = arc(vec![t1(Coef::one()), konst(Coef::zero()), konst(Coef::one())]);
        assert!(compose(&f, &b).unwrap().in_zero_set());
        // negative heights stay out along straight probes
        for num in [-1i64, -2, -5] {
            let c = arc(vec![
                t1(Coef::one()),
                t1(Coef::one()),
                konst(Coef::from_int(num)),
            ]);
            assert!(!compose(&f, &c).unwrap().in_zero_set());
        }
    }

    #[test]
    fn product_of_two_origins() {
        let circ = RationalFunction::from_poly(MPoly::from_int_terms(
            2,
            &[(&[2, 0], 1), (&[0, 2], 1)],
        ));
        let h = product_zero_function(&circ, &circ);
        assert_eq!(h.nvars(), 4);
        let inside = arc(vec![
            t1(Coef::one()),
            t1(Coef::one()),
            t1(Coef::one()),
            t1(Coef::one()),
        ]);
        assert!(compose(&h, &inside).unwrap().in_zero_set());
        let outside = arc(vec![
            t1(Coef::one()),
            t1(Coef::one()),
            konst(Coef::one()).add(&t1(Coef::one())),
            t1(Coef::one()),
        ]);
        assert!(!compose(&h, &outside).unwrap().in_zero_set());
    }

    #[test]
    fn orthant_blocks_are_independent() {
        let h = orthant_zero_function(2).unwrap();
        assert_eq!(h.nvars(), 6);
        let both_pos = arc(vec![
            t1(Coef::one()),
            konst(Coef::zero()),
            konst(Coef::one()),
            t1(Coef::one()),
            konst(Coef::zero()),
            konst(Coef::one()),
        ]);
        assert!(compose(&h, &both_pos).unwrap().in_zero_set());
        let one_negative = arc(vec![
            t1(Coef::one()),
            konst(Coef::zero()),
            konst(Coef::one()),
            t1(Coef::one()),
            konst(Coef::zero()),
            konst(Coef::from_int(-1)),
        ]);
        assert!(!compose(&h, &one_negative).unwrap().in_zero_set());
    }

    #[test]
    fn encoded_half_line_round_trip() {
        // S = {x >= 0} in one variable
        let p = MPoly::var(1, 0);
        let enc = encode_closed_sa_set(&[p]).unwrap();
        assert_eq!(enc.ambient, 4);
        assert_eq!(enc.projection, vec![0]);
        assert!(enc.embedding[0].sub(&MPoly::var(1, 0)).is_zero());
        // interior point x = 2: follow the embedding with the matching
        // fiber direction (2t, t)
        let inner = arc(vec![
            konst(Coef::from_int(2)),
            t1(Coef::from_int(2)),
            t1(Coef::one()),
            konst(Coef::from_int(2)),
        ]);
        assert!(compose(&enc.h, &inner).unwrap().in_zero_set());
        // boundary point x = 0 entered along x = t
        let boundary = arc(vec![
            t1(Coef::one()),
            konst(Coef::zero()),
            t1(Coef::one()),
            t1(Coef::one()),
        ]);
        assert!(compose(&enc.h, &boundary).unwrap().in_zero_set());
        // outside point x = -1 with the forced fiber height y = -1
        let outside = arc(vec![
            konst(Coef::from_int(-1)),
            t1(Coef::one()),
            t1(Coef::one()),
            konst(Coef::from_int(-1)),
        ]);
        assert!(!compose(&enc.h, &outside).unwrap().in_zero_set());
    }

    #[test]
    fn gallery_names_are_unique() {
        let g = gallery();
        assert!(g.len() >= 10);
        for (i, a) in g.iter().enumerate() {
            for b in &g[i + 1..] {
                assert_ne!(a.name, b.name);
            }
        }
    }
}
