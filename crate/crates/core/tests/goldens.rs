use comideal::{component_basis, enumerate_monomials, relation_space, FieldSpec, Multidegree, VarietySpec};
use serde::Deserialize;

#[derive(Deserialize)]
struct Golden {
    variety: String,
    degree: usize,
    dim: usize,
}

#[derive(Deserialize)]
struct Goldens {
    dims: Vec<Golden>,
}

fn goldens() -> Vec<Golden> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/multilinear_dims.json");
    let g: Goldens = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    g.dims
}

#[test]
fn engine_reproduces_goldens() {
    for g in goldens() {
        let v = VarietySpec::builtin(&g.variety).unwrap();
        let mu = Multidegree::multilinear(g.degree);
        let c = component_basis(&v, FieldSpec::Rationals, g.degree, &mu).unwrap();
        assert_eq!(c.quotient_dim(), g.dim, "{} degree {}", g.variety, g.degree);
    }
}

#[test]
fn relation_rank_rederives_goldens() {
    for g in goldens().into_iter().filter(|g| g.degree <= 4 || g.variety != "assosymmetric") {
        let v = VarietySpec::builtin(&g.variety).unwrap();
        let mu = Multidegree::multilinear(g.degree);
        let total = enumerate_monomials(g.degree, &mu).unwrap().len();
        let rank = relation_space(&v, FieldSpec::Rationals, g.degree, &mu).unwrap().rank();
        assert_eq!(total - rank, g.dim, "{} degree {}", g.variety, g.degree);
    }
}

#[test]
#[ignore = "about half a minute"]
fn relation_rank_rederives_assosymmetric_degree_five() {
    let v = VarietySpec::builtin("assosymmetric").unwrap();
    let mu = Multidegree::multilinear(5);
    let rank = relation_space(&v, FieldSpec::Rationals, 5, &mu).unwrap().rank();
    assert_eq!(1680 - rank, 136);
}
