mod common;

use common::{golden_dir, golden_hsder, golden_mmder, parse_h, parse_m, HSDER_END, MMDER_END};
use displace_core::bridge::{correspondence_check, image, lift, lower};
use displace_core::hd::{check, prove, HRule};
use displace_core::md::{check_m, MRule};
use displace_core::serial::{hd_from_json, hd_to_json, md_from_json, md_to_json};
use displace_core::term::{Rule, RuleApp};

fn read(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap()
}

#[test]
#[ignore = "rewrites the golden files"]
fn regenerate() {
    let dir = golden_dir();
    std::fs::write(dir.join("mmder.json"), serde_json::to_string_pretty(&md_to_json(&golden_mmder())).unwrap() + "\n").unwrap();
    std::fs::write(dir.join("hsder.json"), serde_json::to_string_pretty(&hd_to_json(&golden_hsder())).unwrap() + "\n").unwrap();
}

#[test]
fn files_match_the_constructions() {
    assert_eq!(md_from_json(&read("mmder.json"), None).unwrap(), golden_mmder());
    assert_eq!(hd_from_json(&read("hsder.json"), None).unwrap(), golden_hsder());
}

#[test]
fn golden_derivations_check() {
    let m = md_from_json(&read("mmder.json"), None).unwrap();
    let h = hd_from_json(&read("hsder.json"), None).unwrap();
    check_m(&m).unwrap();
    check(&h).unwrap();
    assert_eq!(m.conclusion, parse_m(MMDER_END));
    assert_eq!(h.conclusion, parse_h(HSDER_END));
    assert_eq!(image(&m.conclusion), h.conclusion);
    let names: Vec<_> = m.structural_steps().iter().map(|a| a.rule).collect();
    assert_eq!(names, [Rule::AsscD1, Rule::SwLeftFwd, Rule::MixPerm1Fwd, Rule::MixPerm2Fwd]);
    assert!(correspondence_check(&m, &h));
}

#[test]
fn perturbed_permutation_is_rejected() {
    let mut m = golden_mmder();
    // UpR > AsscD1 > SW > MixPerm1 > MixPerm2: swap the last two
    let mix1 = &mut m.premises[0].premises[0].premises[0];
    let MRule::Structural(app) = &mix1.rule else { panic!() };
    mix1.rule = MRule::Structural(RuleApp { rule: Rule::MixPerm2Fwd, ..app.clone() });
    let err = check_m(&m).unwrap_err();
    assert_eq!(err.node, vec![0, 0, 0]);
    assert_eq!(err.rule, "MixPerm2-fwd");
}

#[test]
fn lowering_keeps_the_logical_skeleton() {
    let low = lower(&golden_mmder()).unwrap();
    check(&low).unwrap();
    assert_eq!(low.conclusion, parse_h(HSDER_END));
    assert_eq!(low.rules(), golden_hsder().rules());
}

#[test]
fn lifting_the_found_proof_reaches_the_target() {
    let found = prove(&parse_h(HSDER_END)).unwrap();
    assert_eq!(found.rule, HRule::UpR);
    let target = parse_m(MMDER_END).antecedent;
    let m = lift(&found, Some(&target)).unwrap();
    check_m(&m).unwrap();
    assert_eq!(m.conclusion, parse_m(MMDER_END));
    assert!(correspondence_check(&m, &found));
    let golden = lift(&golden_hsder(), Some(&target)).unwrap();
    check_m(&golden).unwrap();
}
