use super::*;
use rand::RngCore;

fn f25() -> Arc<FieldCtx> {
    make_field(5, 2).unwrap()
}

fn f121() -> Arc<FieldCtx> {
    make_field(11, 2).unwrap()
}

#[test]
fn make_field_basics() {
    let f5 = make_field(5, 1).unwrap();
    assert_eq!(f5.modulus(), &[0, 1]); // X itself for prime fields
    assert!(f5.zeta3().is_none()); // 3 does not divide 4

    let f25 = f25();
    assert!(f25.zeta3().is_some()); // 3 | 24
    let z = f25.zeta3().unwrap();
    let check = z.square().add(&z).add(&f25.one());
    assert!(check.is_zero());

    let f121 = f121();
    let z = f121.zeta3().unwrap();
    assert!(z.square().add(&z).add(&f121.one()).is_zero());

    assert_eq!(make_field(6, 1).unwrap_err(), GfError::NotPrime(6));
    assert!(matches!(
        make_field(5, 0).unwrap_err(),
        GfError::DegreeTooLarge(_)
    ));
}

#[test]
fn make_field_deterministic() {
    for (p, e) in [(5u64, 2usize), (11, 2), (11, 4), (2, 6)] {
        let a = make_field(p, e).unwrap();
        let b = make_field(p, e).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.zeta3, b.zeta3);
    }
}

#[test]
fn field_axioms_random_triples() {
    for ctx in [f25(), f121(), make_field(2, 6).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let size = ctx.size_u64().unwrap();
        for _ in 0..1000 {
            let a = ctx.element_from_index(rng.next_u64() % size);
            let b = ctx.element_from_index(rng.next_u64() % size);
            let c = ctx.element_from_index(rng.next_u64() % size);
            // associativity and distributivity
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // inverses
            if !a.is_zero() {
                assert!(a.mul(&a.inverse().unwrap()).is_one());
            }
            assert!(a.sub(&a).is_zero());
        }
    }
}

#[test]
fn element_text_round_trip() {
    let ctx = f25();
    let a = ctx.element(vec![3, 1]);
    assert_eq!(a.to_string(), "3,1");
    assert_eq!(ctx.parse_element("3,1").unwrap(), a);
    assert!(ctx.parse_element("1,2,3").is_err());
}

#[test]
fn mult_order_examples() {
    let ctx = f25();
    assert_eq!(mult_order(&ctx.one()).unwrap(), BigUint::from(1u32));
    let z = ctx.zeta3().unwrap();
    assert_eq!(mult_order(&z).unwrap(), BigUint::from(3u32));
    assert_eq!(mult_order(&ctx.zero()).unwrap_err(), GfError::ZeroElement);
    // some primitive element of F_25 has order 24; orders always divide 24
    let mut found_primitive = false;
    for el in ctx.iter_elements() {
        if el.is_zero() {
            continue;
        }
        let ord = mult_order(&el).unwrap().to_u64().unwrap();
        assert_eq!(24 % ord, 0);
        // exhaustive cross-check of the order
        let mut t = 1u64;
        let mut acc = el.clone();
        while !acc.is_one() {
            acc = acc.mul(&el);
            t += 1;
        }
        assert_eq!(ord, t);
        found_primitive |= ord == 24;
    }
    assert!(found_primitive);
}

#[test]
fn nth_roots_examples() {
    let ctx = f25();
    // cube roots of unity
    let roots = nth_roots(&ctx.one(), 3);
    assert_eq!(roots.len(), 3);
    let z = ctx.zeta3().unwrap();
    assert!(roots.contains(&ctx.one()));
    assert!(roots.contains(&z));
    assert!(roots.contains(&z.square()));
    // zero
    assert_eq!(nth_roots(&ctx.zero(), 4), vec![ctx.zero()]);
}

#[test]
fn nth_roots_match_exhaustive_search() {
    for ctx in [f25(), f121()] {
        let size = ctx.size_u64().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2u64, 3, 4, 6, 12] {
            for _ in 0..8 {
                let c = ctx.element_from_index(rng.next_u64() % size);
                let mut expected: Vec<FieldElement> = ctx
                    .iter_elements()
                    .filter(|z| z.pow(n) == c)
                    .collect();
                expected.sort();
                let got = nth_roots(&c, n);
                assert_eq!(got, expected, "n={n} c={c}");
            }
        }
    }
}

#[test]
fn nth_roots_sixth_powers_in_f5_4() {
    let ctx = make_field(5, 4).unwrap();
    // gcd(6, 624) = 6: any nonzero sixth power has exactly 6 roots
    let c = ctx.element_from_index(123).pow(6);
    assert!(!c.is_zero());
    let roots = nth_roots(&c, 6);
    assert_eq!(roots.len(), 6);
    for r in &roots {
        assert_eq!(r.pow(6), c);
    }
}

#[test]
fn nth_roots_large_field() {
    // exercise the big-exponent path: F_11^12
    let ctx = make_field(11, 12).unwrap();
    let c = ctx.element_from_index(987654321).pow(4);
    let roots = nth_roots(&c, 4);
    assert!(!roots.is_empty());
    for r in &roots {
        assert_eq!(r.pow(4), c);
    }
    // a genuine non-square has no square roots
    let half = ctx.unit_order() / 2u32;
    let nonsq = (2..)
        .map(|i| ctx.element_from_index(i))
        .find(|x| !x.is_zero() && !x.pow_big(&half).is_one())
        .unwrap();
    assert!(nth_roots(&nonsq, 2).is_empty());
    let roots = nth_roots(&nonsq.square(), 2);
    assert_eq!(roots.len(), 2);
}

#[test]
fn embedding_examples() {
    let f25 = f25();
    let f625 = make_field(5, 4).unwrap();
    let map = Embedding::new(&f25, &f625).unwrap();
    // identity maps to identity
    assert!(map.apply(&f25.one()).is_one());
    // ring homomorphism on random pairs
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let a = f25.element_from_index(rng.next_u64() % 25);
        let b = f25.element_from_index(rng.next_u64() % 25);
        assert_eq!(map.apply(&a.add(&b)), map.apply(&a).add(&map.apply(&b)));
        assert_eq!(map.apply(&a.mul(&b)), map.apply(&a).mul(&map.apply(&b)));
    }
    // zeta3 keeps its minimal polynomial
    let z = f25.zeta3().unwrap();
    let img = map.apply(&z);
    assert!(img.square().add(&img).add(&f625.one()).is_zero());
    // orders preserved across F_121 -> F_11^4
    let f121 = f121();
    let f4 = make_field(11, 4).unwrap();
    let map11 = Embedding::new(&f121, &f4).unwrap();
    for idx in [2u64, 5, 17, 60] {
        let a = f121.element_from_index(idx);
        if a.is_zero() {
            continue;
        }
        assert_eq!(
            mult_order(&a).unwrap(),
            mult_order(&map11.apply(&a)).unwrap()
        );
    }
    // degree mismatch
    let f11_3 = make_field(11, 3).unwrap();
    assert!(matches!(
        Embedding::new(&f121, &f11_3),
        Err(GfError::NoEmbedding { .. })
    ));
}

#[test]
fn embedding_char2() {
    let src = make_field(2, 3).unwrap();
    let dst = make_field(2, 6).unwrap();
    let map = Embedding::new(&src, &dst).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            let a = src.element_from_index(i);
            let b = src.element_from_index(j);
            assert_eq!(map.apply(&a.mul(&b)), map.apply(&a).mul(&map.apply(&b)));
        }
    }
}

#[test]
fn frobenius_examples() {
    let f121 = f121();
    let f4 = make_field(11, 4).unwrap();
    // fixes the base field
    for idx in [0u64, 1, 7, 100] {
        let a = f121.element_from_index(idx);
        assert_eq!(frobenius_q2(&a, 11).unwrap(), a);
    }
    // moves something outside F_121, and squares to the identity
    let map = Embedding::new(&f121, &f4).unwrap();
    let mut moved = false;
    for idx in 2..40u64 {
        let x = f4.element_from_index(idx);
        let fx = frobenius_q2(&x, 11).unwrap();
        assert_eq!(frobenius_q2(&fx, 11).unwrap(), x);
        if fx != x {
            moved = true;
            // fixed points are exactly the F_121 elements: x was not one
            let in_base = f121
                .iter_elements()
                .any(|b| map.apply(&b) == x);
            assert!(!in_base);
        }
    }
    assert!(moved);
    // wrong characteristic
    assert!(frobenius_q2(&f121.one(), 5).is_err());
}

#[test]
fn unity_root_generator_orders() {
    let ctx = f121();
    for d in [1u64, 2, 3, 4, 6, 12, 24] {
        let g = unity_root_generator(&ctx, d).unwrap();
        assert_eq!(mult_order(&g).unwrap(), BigUint::from(d));
    }
    assert!(unity_root_generator(&ctx, 7).is_none());
}
