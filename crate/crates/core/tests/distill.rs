use eaqcc::conv_core::{syndrome_bits, ConvCheckMatrix};
use eaqcc::distill::*;
use eaqcc::grandfather::{bit_string, SyndromeTable};
use eaqcc::pauli::ConvGenerator;

fn row(s: &str) -> ConvGenerator {
    ConvGenerator::parse_row(s).unwrap()
}

#[test]
fn single_generator() {
    let u = row("1+D^3, 1+D^2 | D^2, D");
    let a = augment_single(&u).unwrap();
    assert_eq!(a, row("1+D^3, 1+D^2, D+D^2 | D^2, D, 1"));
    assert!(eaqcc::conv_core::shifted_product(&a, &a).unwrap().is_zero());
    assert_eq!(a.pauli_frames(), "ZZX|IXZ|XZZ|ZII");
    let d = augment_multi(&ConvCheckMatrix::new(2, vec![u]).unwrap(), AugmentForm::Upper).unwrap();
    assert_eq!(protocol_yield(&d).to_string(), "1/2");
}

#[test]
fn single_generator_syndromes() {
    let u = row("1+D^3, 1+D^2 | D^2, D");
    let t = SyndromeTable::build(&[u], 2, &[], 1, 4).unwrap();
    let got: Vec<(String, String)> = t.entries.iter().map(|e| (e.label.clone(), bit_string(&e.syndrome))).collect();
    let want = [("X1", "1001"), ("Y1", "1011"), ("Z1", "0010"), ("X2", "1010"), ("Y2", "1110"), ("Z2", "0100")];
    assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
    assert!(t.is_unique());
    // the noiseless column changes nothing
    let a = augment_single(&row("1+D^3, 1+D^2 | D^2, D")).unwrap();
    let e = ConvGenerator::parse_row("0, 0, 0 | 1, 0, 0").unwrap();
    assert_eq!(syndrome_bits(&[a], &e, 4).unwrap(), vec![1, 0, 0, 1]);
}

fn multi_input() -> ConvCheckMatrix {
    ConvCheckMatrix::parse("frame n=4\n1+D, D, 1, D | 0, 1, 0, 0\n0, 1, 0, 0 | 1+D, 1+D, 1, D").unwrap()
}

#[test]
fn multi_generator_lower_form() {
    let d = augment_multi(&multi_input(), AugmentForm::Lower).unwrap();
    let want = ConvCheckMatrix::parse(
        "frame n=6\n1+D, D, 1, D, D, 0 | 0, 1, 0, 0, 1, 0\n0, 1, 0, 0, D, D | 1+D, 1+D, 1, D, 0, 1",
    )
    .unwrap();
    assert_eq!(d.stabilizer, want);
    assert_eq!(d.stabilizer.gens[0].pauli_frames(), "ZXZIXI|ZZIZZI");
    assert_eq!(d.stabilizer.gens[1].pauli_frames(), "XYXIIX|XXIXZZ");
    assert!(d.is_commuting());
    assert_eq!(protocol_yield(&d).to_string(), "1/2");
}

#[test]
fn multi_generator_upper_form() {
    let d = augment_multi(&multi_input(), AugmentForm::Upper).unwrap();
    assert!(d.is_commuting());
    assert_eq!(d.m, 2);
}

#[test]
fn css_example() {
    let w = ConvCheckMatrix::parse("frame n=3\n1+D, D, 1 | 0, 0, 0\n0, 0, 0 | 1+D, D, 1").unwrap();
    let d = css_distill_augment(&w).unwrap();
    let want = ConvCheckMatrix::parse("frame n=4\n1+D, D, 1, D^-1+D | 0, 0, 0, 0\n0, 0, 0, 0 | 1+D, D, 1, 1").unwrap();
    assert_eq!(d.stabilizer, want);
    assert!(d.is_commuting());
    assert_eq!(protocol_yield(&d).to_string(), "1/3");
}
