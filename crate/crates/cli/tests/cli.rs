use std::process::Command;

fn nbase(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nbase"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = nbase(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

#[test]
fn level_one_compose() {
    assert_eq!(ok(&["compose", "--level", "1", "4", "2", "3"]), "6");
}

#[test]
fn phi2_of_a_small_tree() {
    assert_eq!(ok(&["ord", "eval", "--level", "2", "[1,1|1]"]), "w");
    assert_eq!(ok(&["ord", "eval", "[1,1,1|1,1]"]), "w^(w)");
}

#[test]
fn symmetric_group_order() {
    assert_eq!(ok(&["group", "order", "--sym", "4"]), "24");
    assert_eq!(ok(&["group", "order", "--gi"]), "120");
}

#[test]
fn corolla_drawing() {
    assert_eq!(ok(&["render", "[2|]", "--format", "ascii"]), "(2)\n├─ ·\n└─ ·");
}

#[test]
fn dot_output_shape() {
    let d = ok(&["render", "[2,2|1]", "--format", "dot"]);
    assert!(d.starts_with("digraph {") && d.ends_with('}'));
    assert_eq!(d.matches("[label=").count(), 2);
    assert_eq!(d.matches("[shape=point]").count(), 3);
}

#[test]
fn level_four_cannot_be_drawn() {
    let (code, _, err) = nbase(&["render", "[[[2|]|]|]"]);
    assert_eq!(code, 1);
    assert!(err.contains("LevelMismatch"), "{err}");
}

#[test]
fn domain_errors_name_the_variant() {
    for (lit, kind) in [
        ("[2,2|3]", "RangeViolation"),
        ("[2,2,2|2,1]", "OrderViolation"),
        ("[2,[2|]|1]", "LevelMismatch"),
        ("[2,2|", "ParseError"),
    ] {
        let (code, _, err) = nbase(&["validate", lit]);
        assert_eq!(code, 1, "{lit}");
        assert!(err.contains(kind), "{lit}: {err}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nbase(&["compose", "4", "2", "3"]).0, 2);
    assert_eq!(nbase(&["frobnicate"]).0, 2);
    assert_eq!(nbase(&["render", "[2|]", "--format", "svg"]).0, 2);
    assert_eq!(nbase(&["selftest", "everything"]).0, 2);
}

#[test]
fn json_mirror_round_trips() {
    let j = ok(&["validate", "--json", "[2,2|1]"]);
    assert_eq!(ok(&["validate", &j]), "[2,2|1]");
    let e = ok(&["compose", "--json", "[2,2|1]", "2", "[2|]"]);
    assert!(e.contains("\"literal\":\"[2,2|1]\""), "{e}");
}

#[test]
fn fg_and_head() {
    assert_eq!(ok(&["fg", "[3,2,4,3|1,4,5]"]), "F: 3 2 4 3\nG: 9\nm: 4");
    assert_eq!(ok(&["head", "[[2,2|1],[2|]|2]"]), "head: [2,2|1]\nslot 2: [[2|]|]");
}

#[test]
fn normalize_strategies_agree() {
    let a = ok(&["normalize", "[2,2,2|2,1]"]);
    let b = ok(&["normalize", "[2,2,2|2,1]", "--strategy", "right"]);
    let c = ok(&["normalize", "[2,2,2|2,1]", "--strategy", "random:9"]);
    assert_eq!(a, "[2,2,2|1,3]\npositions: 1 3 2");
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn ordinal_commands() {
    assert_eq!(ok(&["ord", "cmp", "1+w", "w"]), "EQ");
    assert_eq!(ok(&["ord", "cmp", "phi(1,0)", "3"]), "GT");
    assert_eq!(ok(&["ord", "add", "w", "1"]), "w+1");
    let z = ok(&["ord", "encode", "--level", "3", "phi(2,0)+w"]);
    assert_eq!(ok(&["ord", "eval", "--general", &z]), "phi(2,0)+w");
    let (code, _, err) = nbase(&["ord", "encode", "--level", "2", "phi(2,0)"]);
    assert_eq!(code, 1);
    assert!(err.contains("OutOfRange"), "{err}");
}

#[test]
fn enumeration_counts() {
    assert_eq!(ok(&["enum", "--level", "1", "--max-arity", "4"]), "1\n2\n3\n4");
    assert_eq!(ok(&["enum", "--binary", "6", "--count-only"]), "132");
    assert_eq!(ok(&["enum", "--binary", "7", "--leaves", "--count-only"]), "132");
    assert_eq!(
        ok(&["enum", "--components", "2", "3"]),
        "catalan: 2\nfactorial: 6\nmultisets: 3\nproduct: 36"
    );
}

#[test]
fn morphism_commands() {
    let f = ok(&["mor", "apply1", "[2,2|1]", "--perms", "[[2,1],[1,2]]"]);
    assert!(f.starts_with("target: [2,2|2]"), "{f}");
    assert_eq!(ok(&["mor", "list", "[3|]", "--kind", "one"]).lines().count(), 6);
    let sq = ok(&["mor", "square", "[2,2|1]", "--perms", "[[2,1],[1,2]]", "--sigma", "[2,1]"]);
    assert!(sq.ends_with("commutes: true"), "{sq}");
    let (code, _, err) = nbase(&["mor", "apply1", "[2,2|1]", "--perms", "[[1,2]]"]);
    assert_eq!(code, 1);
    assert!(err.contains("DegreeMismatch"), "{err}");
}

#[test]
fn unital_compose() {
    assert_eq!(ok(&["compose", "--unital", "[2,1|2]", "2", "!e"]), "[2|]");
    assert_eq!(ok(&["compose", "--unital", "[2|]", "1", "0"]), "[1|]");
}

#[test]
fn selftest_is_deterministic() {
    let a = ok(&["selftest", "confluence", "--seed", "7"]);
    let b = ok(&["selftest", "confluence", "--seed", "7", "--jobs", "1"]);
    assert_eq!(a, b);
    assert!(a.ends_with("0 failures"), "{a}");
    assert!(ok(&["selftest", "counts"]).contains("binary counts: 8 cases, 0 failures"));
}
