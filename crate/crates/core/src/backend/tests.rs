use super::*;

#[test]
fn group_words_reduce() {
    let b = VarietyBackend::grp();
    let t = Term::app("m", vec![Term::Var(1), Term::app("i", vec![Term::Var(1)])]);
    assert_eq!(b.nf(&t, 1).unwrap(), Elem::GroupWord(vec![]));
}
