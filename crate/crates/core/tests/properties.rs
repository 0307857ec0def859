use comideal::{
    component_basis, expand, parse, AlgebraSlice, EchelonBasis, Expr, FieldSpec, FiniteDimAlgebra, FreeAlgebra,
    Identity, Monomial, Multidegree, Polynomial, SparseVector, VarietySpec,
};
use comideal::{check_membership, lie_series_fd, lower_central_fd};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;

fn v(name: &str) -> VarietySpec {
    VarietySpec::builtin(name).unwrap()
}

fn vector(entries: Vec<(usize, i64)>, field: FieldSpec) -> SparseVector {
    SparseVector::from_pairs(entries.into_iter().map(|(i, c)| (i, field.from_i64(c))).collect())
}

fn rows_strategy(dim: usize) -> impl Strategy<Value = Vec<Vec<(usize, i64)>>> {
    prop::collection::vec(prop::collection::vec((0..dim, -4i64..=4), 0..5), 0..7)
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![(0u32..26).prop_map(Expr::Var), (0u32..4).prop_map(|g| Expr::Var(25 + g + 1))];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let b = |e: Expr| Box::new(e);
        prop_oneof![
            (1i64..5, 1i64..4, inner.clone())
                .prop_map(move |(n, d, e)| Expr::Scaled(BigRational::new(BigInt::from(n), BigInt::from(d)), b(e))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Sum(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Difference(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Product(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Expr::Commutator(b(x), b(y))),
            (inner.clone(), inner.clone(), inner.clone())
                .prop_map(move |(x, y, z)| Expr::Associator(b(x), b(y), b(z))),
            (inner.clone(), inner).prop_map(move |(x, y)| Expr::Jordan(b(x), b(y))),
        ]
    })
}

proptest! {
    #[test]
    fn rref_is_canonical_and_spans(rows in rows_strategy(6), seed in 0usize..100) {
        for field in [Q, FieldSpec::Prime(5)] {
            let vs: Vec<SparseVector> = rows.iter().map(|r| vector(r.clone(), field)).collect();
            let a = EchelonBasis::rref(field, 6, vs.clone()).unwrap();
            let mut shuffled = vs.clone();
            let n = shuffled.len().max(1);
            shuffled.rotate_left(seed % n);
            shuffled.reverse();
            let b = EchelonBasis::rref(field, 6, shuffled).unwrap();
            prop_assert_eq!(&a, &b);
            for v in &vs {
                prop_assert!(a.contains_vector(v));
            }
            prop_assert_eq!(a.rank() + a.free_columns().len(), 6);
            let again = EchelonBasis::rref(field, 6, a.rows().to_vec()).unwrap();
            prop_assert_eq!(&again, &a);
        }
    }

    #[test]
    fn sum_contains_both(r1 in rows_strategy(5), r2 in rows_strategy(5)) {
        let a = EchelonBasis::rref(Q, 5, r1.into_iter().map(|r| vector(r, Q)).collect()).unwrap();
        let b = EchelonBasis::rref(Q, 5, r2.into_iter().map(|r| vector(r, Q)).collect()).unwrap();
        let s = a.sum(&b).unwrap();
        prop_assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        prop_assert!(s.rank() <= a.rank() + b.rank());
    }

    #[test]
    fn parse_round_trip(e in expr_strategy()) {
        let text = e.render();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn expansion_is_linear(e1 in expr_strategy(), e2 in expr_strategy(), c in -3i64..=3) {
        let (p1, p2) = (expand(&e1, Q).unwrap(), expand(&e2, Q).unwrap());
        let sum = Expr::Sum(Box::new(e1.clone()), Box::new(e2.clone()));
        prop_assert_eq!(expand(&sum, Q).unwrap(), p1.add(&p2).unwrap());
        let scaled = Expr::Scaled(BigRational::from_integer(BigInt::from(c)), Box::new(e1));
        prop_assert_eq!(expand(&scaled, Q).unwrap(), p1.scale(&Q.from_i64(c)));
    }

    #[test]
    fn product_is_bilinear(e1 in expr_strategy(), e2 in expr_strategy(), e3 in expr_strategy()) {
        let (a, b, c) = (expand(&e1, Q).unwrap(), expand(&e2, Q).unwrap(), expand(&e3, Q).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().multiply(&c).unwrap(), a.multiply(&c).unwrap().add(&b.multiply(&c).unwrap()).unwrap());
        prop_assert_eq!(c.multiply(&a.add(&b).unwrap()).unwrap(), c.multiply(&a).unwrap().add(&c.multiply(&b).unwrap()).unwrap());
    }

    #[test]
    fn membership_survives_relabeling(entries in prop::collection::vec((0usize..3, 0usize..3, 0usize..3, -2i64..=2), 0..6), perm_seed in 0usize..6) {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut alg = FiniteDimAlgebra::zero(Q, 3);
        let mut table = std::collections::BTreeMap::new();
        for (i, j, k, c) in entries {
            table.entry((i, j)).or_insert_with(Vec::new).push((k, Q.from_i64(c)));
        }
        for ((i, j), e) in table {
            alg.set_product(i, j, SparseVector::from_pairs(e)).unwrap();
        }
        let relabeled = alg.permuted(&perms[perm_seed]).unwrap();
        for name in ["novikov", "bicommutative", "assosymmetric", "associative"] {
            prop_assert_eq!(
                check_membership(&alg, &v(name)).unwrap().is_member(),
                check_membership(&relabeled, &v(name)).unwrap().is_member()
            );
        }
        prop_assert_eq!(lie_series_fd(&alg).dims(), lie_series_fd(&relabeled).dims());
        prop_assert_eq!(lower_central_fd(&alg).dims(), lower_central_fd(&relabeled).dims());
    }
}

#[test]
fn associative_multilinear_is_factorial() {
    let mut fact = 1;
    for n in 1..=5usize {
        fact *= n;
        let c = component_basis(&v("associative"), Q, n, &Multidegree::multilinear(n)).unwrap();
        assert_eq!(c.quotient_dim(), fact);
    }
}

#[test]
fn magma_keeps_every_monomial() {
    for mu in Multidegree::up_to(3, 4) {
        let c = component_basis(&v("magma"), Q, 3, &mu).unwrap();
        assert_eq!(c.quotient_dim(), comideal::enumerate_monomials(3, &mu).unwrap().len());
    }
}

#[test]
fn extra_identities_never_grow_quotients() {
    let pairs = [
        ("novikov", "leftcom"),
        ("bicommutative", "leftsym"),
        ("assosymmetric", "assoc"),
        ("magma", "rightcom"),
    ];
    for (base, extra) in pairs {
        let small = v(base).with_identity(comideal::builtin(extra).unwrap()).unwrap();
        let a = FreeAlgebra::new(v(base), Q, 2);
        let b = FreeAlgebra::new(small, Q, 2);
        for mu in Multidegree::up_to(2, 5) {
            assert!(
                b.component(&mu).unwrap().quotient_dim() <= a.component(&mu).unwrap().quotient_dim(),
                "{base} + {extra} at {mu}"
            );
        }
    }
}

#[test]
fn rationals_and_f5_agree_on_small_degrees() {
    for name in ["associative", "novikov", "bicommutative", "assosymmetric"] {
        for (k, cap) in [(2, 5), (3, 4)] {
            for mu in Multidegree::up_to(k, cap) {
                let q = component_basis(&v(name), Q, k, &mu).unwrap().quotient_dim();
                let p = component_basis(&v(name), FieldSpec::Prime(5), k, &mu).unwrap().quotient_dim();
                assert_eq!(q, p, "{name} at {mu}");
            }
        }
    }
}

#[test]
fn normal_form_kills_relations_and_is_idempotent() {
    for name in ["novikov", "assosymmetric"] {
        let alg = FreeAlgebra::new(v(name), Q, 2);
        for mu in Multidegree::up_to(2, 5) {
            let c = alg.component(&mu).unwrap();
            for row in c.relations().rows() {
                let mut p = Polynomial::zero(Q);
                for (i, s) in row.iter() {
                    p.add_term(c.monomials()[*i].clone(), s.clone());
                }
                assert!(alg.normal_form(&mu, &p).unwrap().is_zero(), "{name} {mu}");
            }
            for (i, m) in c.basis_monomials().into_iter().enumerate() {
                let nf = alg.normal_form(&mu, &Polynomial::monomial(Q, m.clone())).unwrap();
                assert_eq!(nf, SparseVector::unit(i, Q));
                let back = alg.normal_form(&mu, &c.to_polynomial(&nf)).unwrap();
                assert_eq!(back, nf);
            }
        }
    }
}

#[test]
fn normal_form_of_every_monomial_is_consistent() {
    let alg = FreeAlgebra::new(v("bicommutative"), Q, 2);
    for mu in Multidegree::up_to(2, 5) {
        for m in comideal::enumerate_monomials(2, &mu).unwrap() {
            let nf = alg.monomial_normal_form(&m).unwrap();
            let c = alg.component(&mu).unwrap();
            let back = alg.normal_form(&mu, &c.to_polynomial(&nf)).unwrap();
            assert_eq!(back, nf, "{}", m.render(comideal::Alphabet::Generators));
        }
    }
}

#[test]
fn truncation_does_not_change_lower_degrees() {
    for name in ["novikov", "bicommutative", "assosymmetric"] {
        let small = AlgebraSlice::new(&v(name), Q, 2, 4).unwrap();
        let big = AlgebraSlice::new(&v(name), Q, 2, 5).unwrap();
        let hs = small.lower_central_chain(4).unwrap();
        let hb = big.lower_central_chain(4).unwrap();
        let as_ = small.lie_power_series(4).unwrap();
        let ab = big.lie_power_series(4).unwrap();
        for i in 0..4 {
            assert_eq!(hs.dims[i][..], hb.dims[i][..4], "{name} H_{}", i + 1);
            assert_eq!(as_.dims[i][..], ab.dims[i][..4], "{name} A_[{}]", i + 1);
        }
    }
}

#[test]
fn commutator_ideal_is_symmetric() {
    let s = AlgebraSlice::new(&v("assosymmetric"), Q, 2, 4).unwrap();
    let x = |g| Polynomial::generator(Q, g);
    let xy = x(0).multiply(&x(1)).unwrap();
    let u = s.span(&[x(0), xy.clone()]).unwrap();
    let w = s.span(&[x(1).add(&xy).unwrap(), xy.multiply(&x(0)).unwrap()]).unwrap();
    assert_eq!(s.commutator_ideal(&u, &w).unwrap(), s.commutator_ideal(&w, &u).unwrap());
    assert!(s.commutator_ideal(&s.zero(), &w).unwrap().is_zero());
    let full = s.full();
    let h2 = s.commutator_ideal(&full, &full).unwrap();
    let b = s.bracket_space(&full, &full).unwrap();
    let mu = Multidegree::new(vec![1, 1]);
    assert_eq!(h2.part(&mu), b.part(&mu));
}

#[test]
fn assosymmetric_index_bound_in_truncated_slices() {
    let s = AlgebraSlice::new(&v("assosymmetric"), Q, 2, 5).unwrap();
    let h = s.lower_central_chain(7).unwrap();
    let c = h.vanishes_at.expect("the cap forces finite class") - 1;
    let h2 = h.terms[1].clone();
    assert!(s.power(&h2, c as u32).unwrap().is_zero());
}

#[test]
fn witnesses_reparse_to_the_same_element() {
    let s = AlgebraSlice::new(&v("associative"), Q, 4, 4).unwrap();
    let r = comideal::check_theorem("assoc_even_even", &s, &Default::default()).unwrap();
    let w = r.checks[0].witness.clone().unwrap();
    let id = Identity::from_text("w", &w).unwrap();
    let p = id.template(Q).unwrap();
    let mapped = p.substitute_monomials(&|sym| Some(Monomial::leaf(sym - 26))).unwrap();
    assert!(!s.element(&mapped).unwrap().is_empty());
}
