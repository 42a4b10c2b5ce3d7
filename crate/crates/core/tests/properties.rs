//! Randomized property tests: canonical forms, bracket identities, lattice
//! membership, and document round trips.

use proptest::prelude::*;

use hyperfan::doc::{parse_document, serialize_document, Document};
use hyperfan::exact::intmat::{hnf, mat_mul};
use hyperfan::exact::lattice::integer_kernel;
use hyperfan::exact::{int, Int};
use hyperfan::vfield::{lie_bracket, PolyVectorField};

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<Int>> {
    m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

/// Random 3x3 unimodular matrix as a product of elementary row operations.
fn unimodular3() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6).prop_map(|ops| {
        let mut u = vec![vec![0i64; 3]; 3];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (i, j, c) in ops {
            if i != j {
                for k in 0..3 {
                    u[i][k] += c * u[j][k];
                }
            }
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The Hermite form is a lattice invariant: left-multiplying the
    /// generator matrix by a unimodular matrix does not change it.
    #[test]
    fn hnf_is_unimodular_invariant(m in small_matrix(3, 3), u in unimodular3()) {
        let a = to_big(&m);
        let ua = mat_mul(&to_big(&u), &a);
        prop_assert_eq!(hnf(a), hnf(ua));
    }

    /// Kernel generators returned by integer_kernel really annihilate the
    /// matrix, and small brute-force kernel vectors are all contained.
    #[test]
    fn integer_kernel_is_sound(m in small_matrix(2, 3)) {
        use hyperfan::exact::{GaussianRational, Rat};
        use num_traits::Zero;
        let rows: Vec<Vec<GaussianRational>> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| GaussianRational::new(Rat::from_integer(int(x)), Rat::zero()))
                    .collect()
            })
            .collect();
        let ker = integer_kernel(&rows, 3);
        for b in ker.basis() {
            for row in &m {
                let s: i64 = row
                    .iter()
                    .zip(b.iter())
                    .map(|(&a, x)| {
                        use num_traits::ToPrimitive;
                        a * x.to_i64().unwrap()
                    })
                    .sum();
                prop_assert_eq!(s, 0);
            }
        }
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                for z in -3i64..=3 {
                    let v = [x, y, z];
                    if m.iter().all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>() == 0) {
                        prop_assert!(ker.contains(&[int(x), int(y), int(z)]));
                    }
                }
            }
        }
    }

    /// [X, Y] = -[Y, X] on random quadratic two-variable fields.
    #[test]
    fn bracket_is_antisymmetric(
        ex in prop::collection::vec((-3i64..=3, -3i64..=3), 2),
        tx in prop::collection::vec((0u32..=3, 0usize..2, -4i64..=4), 0..3),
        ty in prop::collection::vec((0u32..=3, 0usize..2, -4i64..=4), 0..3),
    ) {
        use hyperfan::exact::GaussianRational;
        let eig: Vec<GaussianRational> =
            ex.iter().map(|&(a, _)| GaussianRational::from_int(a)).collect();
        let build = |terms: &[(u32, usize, i64)]| {
            let mut f = PolyVectorField::linear(eig.clone());
            for &(d, c, v) in terms {
                let d = d.max(2);
                f.add_term(vec![d, 3 - d.min(3)], c, GaussianRational::from_int(v)).unwrap();
            }
            f
        };
        let x = build(&tx);
        let y = build(&ty);
        let xy = lie_bracket(&x, &y, 6).unwrap();
        let yx = lie_bracket(&y, &x, 6).unwrap();
        use hyperfan::exact::rat;
        prop_assert_eq!(xy, yx.scale(&rat(-1)));
    }

    /// parse(serialize(doc)) is the identity on random vector-field
    /// documents, and serialization is byte-stable.
    #[test]
    fn document_round_trip(
        eigs in prop::collection::vec((-5i64..=5, -5i64..=5), 1..3),
        terms in prop::collection::vec((1u32..=3, 0u32..=2, -7i64..=7, 1i64..=4), 0..4),
    ) {
        use hyperfan::exact::{frac, GaussianRational, Rat};
        let n = eigs.len();
        let mut x = PolyVectorField::linear(
            eigs.iter()
                .map(|&(re, im)| GaussianRational::new(Rat::from_integer(int(re)), Rat::from_integer(int(im))))
                .collect(),
        );
        for &(a, b, p, q) in &terms {
            let mut e = vec![0u32; n];
            e[0] = a.max(1);
            e[(b as usize) % n] += 1;
            x.add_term(e, (b as usize) % n, GaussianRational::new(frac(p, q), Rat::from_integer(int(0)))).unwrap();
        }
        let doc = Document::VectorField(x);
        let s1 = serialize_document(&doc).unwrap();
        let back = parse_document(&s1).unwrap();
        prop_assert_eq!(&back, &doc);
        let s2 = serialize_document(&back).unwrap();
        prop_assert_eq!(s1, s2);
    }
}
