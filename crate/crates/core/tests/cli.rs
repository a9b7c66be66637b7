use compression_schemes::cli::run;

fn code(args: &str) -> i32 {
    run(std::iter::once("ucs").chain(args.split_whitespace()))
}

#[test]
fn exit_codes() {
    assert_eq!(code("family c5 --vc"), 0);
    assert_eq!(code("verify --family w6 --scheme keep-ones"), 0);
    assert_eq!(code("verify --family c5-minus --scheme table3-c5minus"), 2);
    assert_eq!(code("search ucs --family c5 --size 3"), 0);
    assert_eq!(code("search ucs --family c5 --size 2"), 2);
    assert_eq!(code("search ucs --family c5 --size 2 --budget 1"), 3);
    assert_eq!(code("verify --family c7 --scheme keep-ones"), 1);
    assert_eq!(code("verify --family c4 --scheme table1-c5x2"), 1);
    assert_eq!(code("frobnicate"), 1);
}

#[test]
fn search_writes_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c5.ucs");
    assert_eq!(code(&format!("search ucs --family c5 --size 3 --out {}", out.display())), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("decoder base 5 size 3"));
    let lcs = dir.path().join("p2.lcs");
    assert_eq!(code(&format!("search lcs --family p:2 --size 1 --out {}", lcs.display())), 0);
    assert!(std::fs::read_to_string(&lcs).unwrap().starts_with("labeled-decoder base 2 size 1"));
}
