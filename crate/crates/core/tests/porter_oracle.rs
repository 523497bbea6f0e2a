//! Agreement with stems produced by an independent reference implementation
//! of the original algorithm, frozen into tests/data.

use speechact::text::porter_stem;

fn check(table: &str) -> usize {
    let mut mismatches = Vec::new();
    let mut n = 0;
    for line in table.lines().filter(|l| !l.is_empty()) {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        n += 1;
        let got = porter_stem(word);
        if got != expected {
            mismatches.push(format!("{word}: expected {expected}, got {got}"));
        }
    }
    assert!(mismatches.is_empty(), "{} mismatches:\n{}", mismatches.len(), mismatches.join("\n"));
    n
}

#[test]
fn sample_vocabulary() {
    assert_eq!(check(include_str!("data/porter_sample.tsv")), 1000);
}

#[test]
fn speech_act_verbs() {
    assert_eq!(check(include_str!("data/porter_verbs.tsv")), 229);
}
