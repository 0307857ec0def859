use comideal::{check_theorem, AlgebraSlice, FieldSpec, Status, TheoremParams, VarietySpec};

const FIELDS: [FieldSpec; 4] = [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)];

#[test]
fn chain_theorems_per_field() {
    let params = [
        ("th_pro", TheoremParams { p: Some(2), q: Some(3), m: Some(3), ..Default::default() }),
        ("th_pro", TheoremParams { p: Some(3), q: Some(2), m: Some(4), ..Default::default() }),
        ("prod_com_id", TheoremParams { i: Some(5), ..Default::default() }),
    ];
    let mut outcomes = Vec::new();
    for name in ["novikov", "bicommutative"] {
        let v = VarietySpec::builtin(name).unwrap();
        for f in FIELDS {
            let s = AlgebraSlice::new(&v, f, 2, 5).unwrap();
            for (theorem, p) in &params {
                let r = check_theorem(theorem, &s, p).unwrap();
                outcomes.push(format!("{theorem} {name} {}: {}", f.label(), r.status));
                assert_eq!(r.status, Status::Verified, "{theorem} {name} {}: {:?}", f.label(), r.checks);
            }
        }
    }
    println!("{}", outcomes.join("\n"));
}
