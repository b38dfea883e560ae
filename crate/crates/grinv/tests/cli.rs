use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use grinv::format::{ConfigFile, InvariantFile, TRIVIAL_NOTE};
use grinv_core::grassmann::{act_left, general_position, random_invertible, seeded_rng};
use grinv_core::orbit::enumerate_words;
use tempfile::TempDir;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn grinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grinv")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_config(p: &Path) -> ConfigFile {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn read_invariants(p: &Path) -> InvariantFile {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn invariants_of(input: &Path, dir: &TempDir, name: &str) -> InvariantFile {
    let out = dir.path().join(name);
    let run = grinv(&["invariants", "--in", path_str(input), "--out", path_str(&out)]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    read_invariants(&out)
}

#[test]
fn gen_is_deterministic_and_matches_golden() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let run = grinv(&["gen", "--n", "4", "--d", "2", "--s", "5", "--seed", "1", "--bound", "10", "--out", path_str(out)]);
        assert_eq!(code(&run), 0);
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    assert_eq!(text, fs::read(fixture("gen_4_2_5_seed1.json")).unwrap());
    assert_eq!(text.last(), Some(&b'\n'));
    let c = read_config(&a).to_config().unwrap();
    assert!(general_position(&c, c.case()));
}

#[test]
fn gen_rejects_unsupported_and_bad_flags() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    assert_eq!(code(&grinv(&["gen", "--n", "5", "--d", "3", "--s", "4", "--out", path_str(&out)])), 2);
    assert_eq!(code(&grinv(&["gen", "--n", "four", "--d", "2", "--s", "4", "--out", path_str(&out)])), 2);
    assert_eq!(code(&grinv(&["frobnicate"])), 2);
    assert!(!out.exists());
}

#[test]
fn cross_ratio_file() {
    let dir = TempDir::new().unwrap();
    let file = invariants_of(&fixture("cross_ratio.json"), &dir, "cr.json");
    assert_eq!(file.case.kind, "divisible");
    assert_eq!((file.case.r, file.case.e, file.case.k), (2, None, 1));
    assert_eq!(file.letters, ["G_2_2"]);
    assert_eq!(file.invariants.len(), 1);
    assert_eq!(file.invariants[0].value, "3/4");
    assert!(file.note.is_none());
}

#[test]
fn trivial_range_has_note_and_no_values() {
    let dir = TempDir::new().unwrap();
    let file = invariants_of(&fixture("trivial_4_2_3.json"), &dir, "t.json");
    assert!(file.invariants.is_empty() && file.letters.is_empty());
    assert_eq!(file.case.k, 0);
    assert_eq!(file.note.as_deref(), Some(TRIVIAL_NOTE));
}

#[test]
fn degenerate_input_exits_4_without_output() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("d.json");
    let run = grinv(&["invariants", "--in", path_str(&fixture("degenerate_duplicate.json")), "--out", path_str(&out)]);
    assert_eq!(code(&run), 4);
    assert!(!out.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn invariant_words_follow_enumeration() {
    let dir = TempDir::new().unwrap();
    let file = invariants_of(&fixture("gen_4_2_5_seed1.json"), &dir, "g.json");
    assert_eq!(file.letters, ["G_2_2", "G_2_3"]);
    assert_eq!(file.case.k, file.letters.len());
    assert_eq!(file.max_word_len, 3);
    let expected: Vec<Vec<String>> = enumerate_words(2, 3)
        .into_iter()
        .map(|w| w.into_iter().map(|i| file.letters[i].clone()).collect())
        .collect();
    let words: Vec<Vec<String>> = file.invariants.iter().map(|e| e.word.clone()).collect();
    assert_eq!(words, expected);
    let short = dir.path().join("short.json");
    let run = grinv(&["invariants", "--in", path_str(&fixture("gen_4_2_5_seed1.json")), "--max-len", "1", "--out", path_str(&short)]);
    assert_eq!(code(&run), 0);
    assert_eq!(read_invariants(&short).invariants.len(), 2);
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("o.json");
    let bad_json = dir.path().join("bad.json");
    fs::write(&bad_json, "{ not json").unwrap();
    let unreduced = dir.path().join("unreduced.json");
    fs::write(&unreduced, r#"{"n":2,"d":1,"subspaces":[[["2/4"],["1"]]]}"#).unwrap();
    let ragged = dir.path().join("ragged.json");
    fs::write(&ragged, r#"{"n":2,"d":1,"subspaces":[[["1"]]]}"#).unwrap();
    let missing = dir.path().join("missing.json");
    for input in [&bad_json, &unreduced, &ragged, &missing] {
        let run = grinv(&["invariants", "--in", path_str(input), "--out", path_str(&out)]);
        assert_eq!(code(&run), 2, "{}", input.display());
    }
    assert!(!out.exists());
}

#[test]
fn orbit_test_verdicts() {
    let dir = TempDir::new().unwrap();
    let base = fixture("gen_4_2_5_seed1.json");
    let c = read_config(&base).to_config().unwrap();
    let mut rng = seeded_rng(3);
    let moved = act_left(&random_invertible(&mut rng, 4, 10), &c).unwrap();
    let moved_path = dir.path().join("moved.json");
    fs::write(&moved_path, grinv::format::to_json(&ConfigFile::from_config(&moved))).unwrap();
    let run = grinv(&["orbit-test", "--a", path_str(&base), "--b", path_str(&moved_path)]);
    assert_eq!((code(&run), String::from_utf8_lossy(&run.stdout).trim()), (0, "Equivalent"));

    let other = dir.path().join("other.json");
    grinv(&["gen", "--n", "4", "--d", "2", "--s", "5", "--seed", "2", "--out", path_str(&other)]);
    let run = grinv(&["orbit-test", "--a", path_str(&base), "--b", path_str(&other)]);
    assert_eq!((code(&run), String::from_utf8_lossy(&run.stdout).trim()), (3, "Distinct"));

    let degenerate = fixture("degenerate_duplicate.json");
    let run = grinv(&["orbit-test", "--a", path_str(&base), "--b", path_str(&degenerate)]);
    assert_eq!((code(&run), String::from_utf8_lossy(&run.stdout).trim()), (5, "Inconclusive"));
}

#[test]
fn rank_reports_expected_dimension() {
    let run = grinv(&["rank", "--in", path_str(&fixture("gen_4_2_5_seed1.json"))]);
    assert_eq!(code(&run), 0);
    assert_eq!(String::from_utf8_lossy(&run.stdout), "rank 5 / expected 5\n");
}

#[test]
fn letters_embed_roundtrip_preserves_invariants() {
    let dir = TempDir::new().unwrap();
    let base = fixture("gen_4_2_5_seed1.json");
    let letters = dir.path().join("letters.json");
    let embedded = dir.path().join("embedded.json");
    assert_eq!(code(&grinv(&["letters", "--in", path_str(&base), "--out", path_str(&letters)])), 0);
    assert_eq!(code(&grinv(&["embed", "--in", path_str(&letters), "--out", path_str(&embedded)])), 0);
    let again = dir.path().join("letters2.json");
    assert_eq!(code(&grinv(&["letters", "--in", path_str(&embedded), "--out", path_str(&again)])), 0);
    assert_eq!(fs::read(&letters).unwrap(), fs::read(&again).unwrap());
    let before = invariants_of(&base, &dir, "before.json");
    let after = invariants_of(&embedded, &dir, "after.json");
    assert_eq!(before, after);
}

#[test]
fn embed_rejects_wrong_letter_ids() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("l.json");
    fs::write(&input, r#"{"r":2,"d":1,"s":4,"letters":[{"id":"G_3_3","matrix":[["2"]]}]}"#).unwrap();
    let out = dir.path().join("o.json");
    assert_eq!(code(&grinv(&["embed", "--in", path_str(&input), "--out", path_str(&out)])), 2);
    fs::write(&input, r#"{"r":2,"d":1,"s":4,"letters":[{"id":"G_2_2","matrix":[["0"]]}]}"#).unwrap();
    assert_eq!(code(&grinv(&["embed", "--in", path_str(&input), "--out", path_str(&out)])), 4);
    assert!(!out.exists());
}

#[test]
fn config_file_roundtrip_is_lossless() {
    let text = fs::read_to_string(fixture("gen_4_2_5_seed1.json")).unwrap();
    let file: ConfigFile = serde_json::from_str(&text).unwrap();
    let c = file.to_config().unwrap();
    assert_eq!(grinv::format::to_json(&ConfigFile::from_config(&c)), text);
}
