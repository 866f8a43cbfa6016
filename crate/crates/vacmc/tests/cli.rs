use vacmc::cli::{run, Output};
use vacmc::report::Report;

fn vacmc(args: &[&str]) -> Output {
    run(std::iter::once("vacmc").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (u8, Report) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = vacmc(&full);
    let report: Report = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{}: {}", e, out.stdout));
    assert_eq!(serde_json::from_str::<Report>(&report.to_json()).unwrap(), report);
    (out.code, report)
}

#[test]
fn vacuity_of_p5_on_p() {
    let (code, r) = json(&["vacuity", "P", "A((X q) -> X X q)", "--sub", "q"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.status.as_deref(), Some("NonVacuous"));
    assert_eq!(r.inputs.sub.as_deref(), Some("q"));

    let (code, r) = json(&["vacuity", "P", "A((X q) -> X X q)", "--sub", "q", "--via", "structure"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.status.as_deref(), Some("Vacuous"));
    assert_eq!(r.result.route.as_deref(), Some("Structure"));
}

#[test]
fn qctl_bisim_on_l() {
    let (code, r) = json(&["qctl", "L", "forall x . AG ((AX x) | (AX !x))", "--semantics", "bisim"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.value, Some(serde_json::Value::Bool(false)));
    assert_eq!(r.result.route.as_deref(), Some("KParallelX"));
}

#[test]
fn o_refutes_p4_in_q() {
    let (code, r) = json(&["check", "O", "AG ((AX q) | (AX !q))"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.value, Some(serde_json::Value::Bool(false)));
    assert!(r.result.witness.is_some());
}

#[test]
fn unknown_exits_two() {
    let args = ["--bound", "0", "vacuity", "M", "(EX p) | (AX !p)", "--sub", "p"];
    let (code, r) = json(&args);
    assert_eq!(code, 2);
    assert_eq!(r.result.status.as_deref(), Some("Unknown"));
    assert!(r.result.bounds.is_some());

    let mut more = args.to_vec();
    more.extend_from_slice(&["--bounded-validity", "2"]);
    let (code, r) = json(&more);
    assert_eq!(code, 0);
    assert_eq!(r.result.status.as_deref(), Some("Vacuous"));
}

#[test]
fn errors_exit_one() {
    for args in [
        &["check", "nosuch", "p"][..],
        &["check", "L", "AG ("],
        &["vacuity", "L", "AG p"],
        &["frobnicate"],
        &["vacuity", "L", "AG ((AX p) | (AX !p))", "--sub", "p", "--via", "mono"],
    ] {
        let out = vacmc(args);
        assert_eq!(out.code, 1, "{:?}", args);
        assert!(!out.stderr.is_empty(), "{:?}", args);
    }
}

#[test]
fn absent_subformula_is_vacuous() {
    let (code, r) = json(&["vacuity", "L", "AG p", "--sub", "q"]);
    assert_eq!(code, 0);
    assert_eq!(r.result.status.as_deref(), Some("Vacuous"));
    assert_eq!(r.result.route.as_deref(), Some("AbsentSubformula"));
}

#[test]
fn table1_matches_golden() {
    let out = vacmc(&["table1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, include_str!("golden/table1.txt"));
}

#[test]
fn translate_round_trip() {
    let ez = vacmc(&["translate", "ez", "U"]);
    assert_eq!(ez.code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ezU.kr");
    std::fs::write(&path, &ez.stdout).unwrap();
    let back = vacmc(&["translate", "decode", path.to_str().unwrap(), "--order", "p,q"]);
    assert_eq!(back.code, 0, "{}", back.stderr);
    let k = vacmc::kr::parse(&back.stdout).unwrap();
    let u = vacmc::fixtures::fixture("U").unwrap();
    assert!(vacmc_core::kripke::isomorphism(&k, &u).is_some());

    let f = vacmc(&["translate", "f", "AG p", "--order", "p,q"]);
    assert_eq!(f.code, 0);
    assert!(f.stdout.contains('z') && !f.stdout.contains('p'));
}

#[test]
fn relational_commands() {
    let (code, r) = json(&["bisim", "L", "M", "--props", "p"]);
    assert_eq!(code, 0);
    assert!(r.result.value.is_some());
    let (code, r) = json(&["quotient", "chi"]);
    assert_eq!(code, 0);
    assert!(r.result.output.unwrap().contains("kripke"));
    let (code, _) = json(&["simulates", "L", "M", "--props", "p"]);
    assert_eq!(code, 0);
}

#[test]
fn reports_are_deterministic() {
    let a = vacmc(&["--format", "json", "vacuity", "O", "AG ((AX p) | (AX !p))", "--sub", "p"]);
    let b = vacmc(&["--format", "json", "vacuity", "O", "AG ((AX p) | (AX !p))", "--sub", "p"]);
    let strip = |s: &str| {
        let mut r: Report = serde_json::from_str(s).unwrap();
        r.meta.elapsed_ms = 0;
        r
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
}
