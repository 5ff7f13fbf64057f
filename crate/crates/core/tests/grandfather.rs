use eaqcc::conv_core::ConvCheckMatrix;
use eaqcc::grandfather::*;
use eaqcc::pauli::{ConvGenerator, PauliString};

fn code() -> GrandfatherCode {
    let spec = example_spec();
    build_grandfather(spec.params, &spec.encoder).unwrap()
}

fn m(text: &str) -> ConvCheckMatrix {
    ConvCheckMatrix::parse(text).unwrap()
}

#[test]
fn encoded_subgroups() {
    let c = code();
    assert_eq!(c.s_e, m("frame n=5\n0,0,0,0,0 | 1+D,0,D,1,1+D\n1+D,D,0,1,1+D | 0,0,0,0,0"));
    assert_eq!(c.s_i, m("frame n=5\n0,0,D,D,D | 0,1,0,1,1"));
    assert_eq!(c.s_g, m("frame n=5\n0,D^-1,1,D^-1,0 | 0,0,0,0,0\n0,D^-1,0,0,0 | 0,0,1,0,0"));
    assert_eq!(c.s_c, m("frame n=5\n1,1+D^-1,0,1+D^-1,0 | 0,0,0,0,0"));
    let full = m("frame n=6\n1,0,0,0,0,0 | 0,1+D,0,D,1,1+D\n0,1+D,D,0,1,1+D | 1,0,0,0,0,0\n0,0,0,D,D,D | 0,0,1,0,1,1");
    assert_eq!(c.s_full, full);
}

#[test]
fn table_matches() {
    let t = syndrome_table(&code(), 1, 2).unwrap();
    let want = [
        ("X1", "001100"),
        ("Y1", "111100"),
        ("Z1", "110000"),
        ("X2", "000100"),
        ("Y2", "000110"),
        ("Z2", "000010"),
        ("X3", "000001"),
        ("Y3", "010001"),
        ("Z3", "010000"),
        ("X4", "001001"),
        ("Y4", "101011"),
        ("Z4", "100010"),
        ("X5", "001101"),
        ("Y5", "111111"),
        ("Z5", "110010"),
    ];
    let got: Vec<(String, String)> = t.entries.iter().map(|e| (e.label.clone(), bit_string(&e.syndrome))).collect();
    let want: Vec<(String, String)> = want.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(got, want);
    assert!(t.is_unique());
    assert!(t.to_csv().starts_with("error,syndrome_bits\nX1,001100\n"));
}

fn frames(start: i64, fs: &[&str]) -> ConvGenerator {
    let ps: Vec<PauliString> = fs.iter().map(|s| s.parse().unwrap()).collect();
    ConvGenerator::from_frames(start, &ps).unwrap()
}

#[test]
fn passive_list() {
    let c = code();
    let list = [
        frames(-1, &["IIIII", "IXIXX", "IIZZZ"]),
        frames(-1, &["IZIZI", "IIZII", "IIIII"]),
        frames(-1, &["IZIII", "IIXII", "IIIII"]),
        frames(-1, &["IZIZI", "ZZIZI", "IIIII"]),
    ];
    for e in &list {
        assert_eq!(classify_error(&c, e).unwrap(), ErrorClass::Passive, "{}", e.pauli_frames());
    }
    let prod = list[1].add(&list[3].shift(2)).add(&list[2]);
    assert_eq!(classify_error(&c, &prod).unwrap(), ErrorClass::Passive);
    assert_eq!(classify_error(&c, &frames(0, &["XIIII"])).unwrap(), ErrorClass::Active);
    assert_eq!(classify_error(&c, &ConvGenerator::zero(5)).unwrap(), ErrorClass::Passive);
    let logical = c.logical.gens[0].clone();
    assert_eq!(classify_error(&c, &logical).unwrap(), ErrorClass::UndetectedLogical);
}
