use eaqcc::conv_core::ConvCheckMatrix;
use eaqcc::distill::augment_multi;
use eaqcc::grandfather::{build_grandfather, example_spec};
use eaqcc::pauli::ConvGenerator;
use eaqcc::sim::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn forney() -> ConvCheckMatrix {
    ConvCheckMatrix::parse("0,D,D | 1+D,1,1+D\n1+D,1+D,1 | 0,D,D").unwrap()
}

fn grandfather_model() -> CorrectionModel {
    let spec = example_spec();
    CorrectionModel::from_grandfather(&build_grandfather(spec.params, &spec.encoder).unwrap())
}

fn decoder(model: &CorrectionModel) -> TableDecoder {
    let t = model.table(1).unwrap();
    assert!(t.is_unique());
    TableDecoder::new(t)
}

fn opts(trials: usize, frames: usize, seed: u64) -> SimOptions {
    SimOptions { trials, frames, seed, truncate_depth: 32 }
}

#[test]
fn forney_model_window() {
    let m = CorrectionModel::from_stabilizer(&forney());
    assert_eq!(m.window, 2);
    assert_eq!(decoder(&m).spacing, 2);
}

#[test]
fn exhaustive_single_errors_both_codes() {
    for m in [grandfather_model(), CorrectionModel::from_stabilizer(&forney())] {
        let d = decoder(&m);
        let r = exhaustive_single_errors(&m, &d, 8).unwrap();
        assert!(r.failures.is_empty(), "{:?}", r.failures);
        assert_eq!(r.cases, 4 * 3 * m.n + 9 * m.n * m.n);
    }
}

#[test]
fn one_error_every_other_frame() {
    for m in [grandfather_model(), CorrectionModel::from_stabilizer(&forney())] {
        let d = decoder(&m);
        let r = run_correction(&m, &d, &Injection::OnePerAlignedFrame { spacing: 2 }, &opts(300, 20, 11)).unwrap();
        assert_eq!(r.residual_logical_rate, 0.0);
        assert_eq!(r.syndrome_miss_rate, 0.0);
        assert!((r.raw_error_rate - 10.0 / (20.0 * m.n as f64)).abs() < 1e-12);
    }
}

#[test]
fn dense_errors_defeat_the_decoder() {
    let m = CorrectionModel::from_stabilizer(&forney());
    let r = run_correction(&m, &decoder(&m), &Injection::OnePerAlignedFrame { spacing: 1 }, &opts(200, 20, 3)).unwrap();
    assert!(r.residual_logical_rate > 0.0);
}

#[test]
fn zero_noise_all_success() {
    let m = grandfather_model();
    let ch = PauliChannel::depolarizing(0.0).unwrap();
    let r = run_correction(&m, &decoder(&m), &Injection::Channel(ch), &opts(50, 10, 5)).unwrap();
    assert_eq!((r.raw_error_rate, r.residual_logical_rate, r.syndrome_miss_rate), (0.0, 0.0, 0.0));
}

#[test]
fn same_seed_same_report() {
    let m = CorrectionModel::from_stabilizer(&forney());
    let d = decoder(&m);
    let how = Injection::Channel(PauliChannel::depolarizing(0.05).unwrap());
    let a = run_correction(&m, &d, &how, &opts(200, 16, 42)).unwrap();
    let b = run_correction(&m, &d, &how, &opts(200, 16, 42)).unwrap();
    assert_eq!(a, b);
    let c = run_correction(&m, &d, &how, &opts(200, 16, 43)).unwrap();
    assert_ne!(a.raw_error_rate, c.raw_error_rate);
    for r in [&a, &c] {
        for x in [r.raw_error_rate, r.residual_logical_rate, r.syndrome_miss_rate] {
            assert!((0.0..=1.0).contains(&x));
        }
    }
}

#[test]
fn x_rate_within_three_sigma() {
    let p = 0.1;
    let ch = PauliChannel::new(p, 0.0, 0.0).unwrap();
    let (n, frames) = (10, 10_000);
    let e = sample_errors(&ch, n, &[], frames, 7);
    let hits: usize = e.x.iter().map(|q| q.weight()).sum();
    assert!(e.z.iter().all(|q| q.is_zero()));
    let samples = (n * frames) as f64;
    let sigma = (samples * p * (1.0 - p)).sqrt();
    assert!((hits as f64 - samples * p).abs() < 3.0 * sigma, "{hits}");
}

#[test]
fn noiseless_columns_untouched() {
    let ch = PauliChannel::depolarizing(0.9).unwrap();
    let e = sample_errors(&ch, 4, &[1, 3], 50, 1);
    for q in [1, 3] {
        assert!(e.z[q].is_zero() && e.x[q].is_zero());
    }
}

#[test]
fn paper_syndrome_key() {
    let m = grandfather_model();
    let e = ConvGenerator::parse_row("0,0,0,0,0 | 1,0,0,0,0").unwrap();
    let bits: Vec<u8> = syndromes_of(&m.measured, &e, 2).unwrap().concat();
    assert_eq!(bits, vec![0, 0, 1, 1, 0, 0]);
    assert!(syndromes_of(&m.measured, &ConvGenerator::zero(5), 2).unwrap().concat().iter().all(|&b| b == 0));
}

#[test]
fn syndromes_are_additive() {
    let m = CorrectionModel::from_stabilizer(&forney());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let ch = PauliChannel::depolarizing(rng.random_range(0.0..0.5)).unwrap();
        let a = sample_errors(&ch, 3, &[], 6, rng.random());
        let b = sample_errors(&ch, 3, &[], 6, rng.random());
        let sa = StreamSyndrome::measure(&m, &a, 6).unwrap();
        let sb = StreamSyndrome::measure(&m, &b, 6).unwrap();
        let sab = StreamSyndrome::measure(&m, &a.add(&b), 6).unwrap();
        for g in 0..sa.bits.len() {
            let x: Vec<u8> = sa.bits[g].iter().zip(&sb.bits[g]).map(|(p, q)| p ^ q).collect();
            assert_eq!(x, sab.bits[g]);
        }
    }
}

#[test]
fn distillation_framing_matches_underlying_code() {
    // the appended columns are noiseless, so the masked run must agree exactly
    let base = CorrectionModel::from_stabilizer(&forney());
    let d = augment_multi(&forney(), Default::default()).unwrap();
    assert_eq!((d.m, d.noiseless_columns.clone()), (2, vec![3, 4]));
    let aug = CorrectionModel::from_distill(&d);
    let how = Injection::Channel(PauliChannel::depolarizing(0.03).unwrap());
    let a = run_correction(&base, &decoder(&base), &how, &opts(200, 12, 1)).unwrap();
    let b = run_correction(&aug, &decoder(&aug), &how, &opts(200, 12, 1)).unwrap();
    assert_eq!(a, b);
}

fn single_errors_anywhere(m: &CorrectionModel, d: &dyn Decoder, frames: usize) -> (usize, usize) {
    let (mut cases, mut bad) = (0, 0);
    for f in 0..frames {
        for q in m.noisy() {
            for p in ["X", "Y", "Z"] {
                let mut s = vec!["I"; m.n];
                s[q] = p;
                let e = ConvGenerator::from_frames(f as i64, &[s.concat().parse().unwrap()]).unwrap();
                cases += 1;
                let o = correct_once(m, d, &e, frames).unwrap();
                bad += (o.logical || o.syndrome_left) as usize;
            }
        }
    }
    (cases, bad)
}

#[test]
fn sliding_decoder_corrects_single_errors_on_any_frame() {
    for m in [grandfather_model(), CorrectionModel::from_stabilizer(&forney())] {
        let aligned = decoder(&m);
        let sliding = SlidingDecoder::new(m.table(1).unwrap());
        let (cases, bad) = single_errors_anywhere(&m, &sliding, 9);
        assert_eq!((cases, bad), (9 * 3 * m.n, 0));
        let (_, bad_aligned) = single_errors_anywhere(&m, &aligned, 9);
        assert!(bad_aligned > 0);
    }
}
