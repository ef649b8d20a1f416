use bordersub::rational::int;
use bordersub::tensor::unit_tensor;
use bordersub::Tensor3;
use bordersub_cli::{certify_status, cmd_certify, cmd_reproduce, CertifyStatus, RunReport, INAPPLICABLE};
use serde_json::json;

#[test]
fn report_json_has_sorted_keys() {
    let mut r = RunReport::new("demo", json!({"b": 1, "a": 2}));
    r.check("first", true, "ok");
    r.outputs = json!({"z": 0, "y": [1]});
    assert_eq!(
        r.to_json(),
        r#"{"checks":[{"detail":"ok","name":"first","pass":true}],"command":"demo","inputs":{"a":2,"b":1},"outputs":{"y":[1],"z":0}}"#
    );
    assert!(r.all_pass());
    assert!(r.to_table().contains("PASS  first"));
}

#[test]
fn reproduce_small_and_out_of_range() {
    let one = cmd_reproduce(1).unwrap();
    assert!(one.all_pass(), "{}", one.to_table());
    assert!(cmd_reproduce(0).is_err());
    assert!(cmd_reproduce(6).is_err());
}

#[test]
fn reproduce_through_examples() {
    let r = cmd_reproduce(3).unwrap();
    assert!(r.all_pass(), "{}", r.to_table());
    assert!(r.checks.iter().any(|c| c.name == "n=3 components not equidimensional"));
    assert_eq!(r.outputs["n3_components"]["complete"], true);
}

#[test]
fn reproduce_four_expects_55() {
    let r = cmd_reproduce(4).unwrap();
    let c = r.checks.iter().find(|c| c.name == "n=4 tangent dimension").unwrap();
    assert!(c.pass);
    assert_eq!(c.detail, "55");
}

#[test]
fn certify_statuses() {
    let refused = unit_tensor(2).add(&Tensor3::from_entries(2, [((1, 2, 2), int(1)), ((2, 1, 1), int(1))]).unwrap()).unwrap();
    assert_eq!(certify_status(&cmd_certify(&refused).unwrap()), CertifyStatus::Refused);
    let zero_diag = Tensor3::from_entries(2, [((1, 1, 1), int(1)), ((1, 2, 2), int(1))]).unwrap();
    let r = cmd_certify(&zero_diag).unwrap();
    assert_eq!(certify_status(&r), CertifyStatus::Inapplicable);
    assert_eq!(r.outputs["reason"], INAPPLICABLE);
    assert_eq!(certify_status(&cmd_certify(&unit_tensor(3)).unwrap()), CertifyStatus::Certified);
}
