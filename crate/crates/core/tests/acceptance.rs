use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eaqcc::algebra::gf2::gf2_rowspace_eq;
use eaqcc::algebra::{rank_ff, rank_rational, smith_form, LaurentPoly, PolyMatrix, RationalFn};
use eaqcc::block_ea::*;
use eaqcc::circuits::*;
use eaqcc::conv_core::*;
use eaqcc::distill::*;
use eaqcc::grandfather::*;
use eaqcc::pauli::*;
use eaqcc::sim::*;

type Outcome = Result<(), String>;

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

macro_rules! check_eq {
    ($a:expr, $b:expr) => {{
        let (a, b) = (&$a, &$b);
        if a != b {
            return Err(format!("{} = {:?}, expected {:?}", stringify!($a), a, b));
        }
    }};
}

fn p(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn h(text: &str) -> ConvCheckMatrix {
    ConvCheckMatrix::parse(text).unwrap()
}

fn pm(rows: &[&[&str]]) -> PolyMatrix<LaurentPoly> {
    PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
}

fn rm(rows: &[&str]) -> ConvCheckMatrix<RationalFn> {
    let gens: Vec<ConvGenerator<RationalFn>> = rows
        .iter()
        .map(|line| {
            let (z, x) = line.split_once('|').unwrap();
            let parse = |s: &str| s.split(',').map(|t| t.trim().parse::<RationalFn>().unwrap()).collect();
            ConvGenerator::new(parse(z), parse(x)).unwrap()
        })
        .collect();
    ConvCheckMatrix::new(gens[0].n, gens).unwrap()
}

fn rand_poly(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_exponents((lo..=hi).filter(|_| rng.random_bool(0.4)))
}

fn rand_check(rng: &mut ChaCha8Rng, n: usize, rows: usize, hi: i64) -> ConvCheckMatrix {
    let gens = (0..rows)
        .map(|_| {
            let z = (0..n).map(|_| rand_poly(rng, 0, hi)).collect();
            let x = (0..n).map(|_| rand_poly(rng, 0, hi)).collect();
            ConvGenerator::new(z, x).unwrap()
        })
        .collect();
    ConvCheckMatrix::new(n, gens).unwrap()
}

fn two_generator_code() -> ConvCheckMatrix {
    let row = parse_gf4_conv("1+D, W+D, 1, D").unwrap().row(0);
    let [w, wb] = gf4_import_conv(&row);
    ConvCheckMatrix::new(4, vec![wb, w]).unwrap()
}

fn is_standard(om: &PolyMatrix<RationalFn>, c: usize) -> bool {
    (0..om.rows()).all(|i| {
        (0..om.cols()).all(|j| {
            let one = i < 2 * c && j < 2 * c && i / 2 == j / 2 && i != j;
            *om.get(i, j) == if one { RationalFn::one() } else { RationalFn::zero() }
        })
    })
}

fn criterion_1() -> Outcome {
    let code = BlockCheckMatrix::from_paulis(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]).unwrap();
    check_eq!(symplectic_matrix(&code), vec![vec![0u8; 4]; 4]);
    check_eq!(ebits_general(&code), 0);
    Ok(())
}

fn criterion_2() -> Outcome {
    let code = BlockCheckMatrix::from_paulis(&["ZXZI", "ZZIZ", "XYXI", "XXIX"]).unwrap();
    check_eq!(ebits_general(&code), 1);
    let enc = synth_block_encoder(&code).map_err(|e| e.to_string())?;
    check!(enc.reproduces(&code), "encoder does not reproduce the check matrix");
    let want = BlockCheckMatrix::from_paulis(&["XZXZI", "ZZZIZ", "IYXXZ", "IZYYX"]).unwrap();
    check!(
        gf2_rowspace_eq(&enc.encoded_stabilizer().bits(), &want.bits()),
        "encoded stabilizer {} differs",
        enc.encoded_stabilizer()
    );
    Ok(())
}

fn criterion_3() -> Outcome {
    let u = ConvGenerator::parse_row("D | 1+D^3").unwrap();
    let v = ConvGenerator::parse_row("1+D | D^3").unwrap();
    check_eq!(shifted_product(&u, &u).unwrap(), p("D^-2+D^-1+D+D^2"));
    check_eq!(shifted_product(&v, &v).unwrap(), p("D^-3+D^-2+D^2+D^3"));
    check_eq!(shifted_product(&v, &u).unwrap(), p("D^-3+D^-2+1+D+D^2"));
    let m = two_generator_code();
    let (a, b) = (&m.gens[0], &m.gens[1]);
    check_eq!(a.pauli_frames(), "ZXZI|ZZIZ");
    check_eq!(b.pauli_frames(), "XYXI|XXIX");
    check_eq!(shifted_product(a, a).unwrap(), p("D^-1+D"));
    check_eq!(shifted_product(b, b).unwrap(), p("D^-1+D"));
    check_eq!(shifted_product(a, b).unwrap(), p("D^-1"));
    Ok(())
}

fn criterion_4() -> Outcome {
    let g = h("D | 1");
    check_eq!(expand_check(&g, 2).unwrap(), h("0, 1 | 1, 0\nD, 0 | 0, 1"));
    check_eq!(expand_check(&g, 3).unwrap(), h("0, 1, 0 | 1, 0, 0\n0, 0, 1 | 0, 1, 0\nD, 0, 0 | 0, 0, 1"));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..100 {
        let n = rng.random_range(1..=3);
        let rows = rng.random_range(1..=3);
        let l = rng.random_range(1..=4);
        let m = rand_check(&mut rng, n, rows, 3);
        let lhs = shifted_omega(&expand_check(&m, l).unwrap());
        let rhs = expand_omega(&shifted_omega(&m), l, rows).unwrap();
        check!(lhs == rhs, "expansion lemma fails on case {case}: l={l}\n{m}");
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let d = poly_sgsop(&two_generator_code(), DEFAULT_L_MAX).map_err(|e| e.to_string())?;
    check_eq!((d.l, d.c), (2, 2));
    check!(is_standard(&shifted_omega(&d.reordered), 2), "final Omega is not J + J");
    let code = general_construct(&d).map_err(|e| e.to_string())?;
    let (r1, r2) = code.rates();
    check_eq!((r1.to_string(), r2.to_string()), ("3/4".to_string(), "1/4".to_string()));
    let rep = verify_encoding(&code).map_err(|e| e.to_string())?;
    check!(rep.ok(), "verification failed: {rep:?}");
    Ok(())
}

fn criterion_6() -> Outcome {
    let m = h("0,0,0,0,0 | 1+D,0,D,1,1+D\n\
               1+D,D,0,1,1+D | 0,0,0,0,0\n\
               0,0,D,D,D | 0,1,0,1,1\n\
               0,D^-1,1,D^-1,0 | 0,0,0,0,0\n\
               0,D^-1,0,0,0 | 0,0,1,0,0");
    check_eq!(rank_ff(&shifted_omega(&m)), 4);
    check_eq!(conv_ebits(&m), 2);
    let css = h("1+D^2, 1+D+D^2 | 0, 0\n0, 0 | 1+D^2, 1+D+D^2");
    check_eq!(conv_ebits(&css), 1);
    let hc = pm(&[&["1+D^2", "1+D+D^2"]]);
    check_eq!(css_construct(&hc, &hc).map_err(|e| e.to_string())?.c, 1);
    Ok(())
}

fn replay_steps(
    start: ConvCheckMatrix<RationalFn>,
    steps: &[(&str, &[&str])],
) -> Result<ConvCheckMatrix<RationalFn>, String> {
    let mut m = start;
    for (gates, want) in steps {
        let gl = parse_gate_list(&gates.replace(';', "\n")).map_err(|e| e.to_string())?;
        m = apply_gates(&m, &gl).map_err(|e| e.to_string())?;
        check!(m == rm(want), "after {gates}: got\n{m}");
    }
    Ok(m)
}

fn criterion_7() -> Outcome {
    // finite-depth example
    let hc = pm(&[&["1+D^2", "1+D+D^2"]]);
    let code = css_construct(&hc, &hc).map_err(|e| e.to_string())?;
    check_eq!(code.klass, CodeClass::FiniteDepth);
    check_eq!(code.params(), "[[2,1;1]]");
    check!(verify_encoding(&code).map_err(|e| e.to_string())?.ok(), "finite-depth code fails verification");
    let end = replay_steps(
        rm(&["1, 1, 0 | 0, 0, 0", "0, 0, 0 | 1, 1, 0"]),
        &[
            ("CNOT 2 3 D+D^2", &["1, 1, 0 | 0, 0, 0", "0, 0, 0 | 1, 1, D+D^2"]),
            ("H 2; H 3", &["1, 0, 0 | 0, 1, 0", "0, 1, D+D^2 | 1, 0, 0"]),
            ("CNOT 2 3 D", &["1, 0, 0 | 0, 1, D", "0, D, D+D^2 | 1, 0, 0"]),
            ("CNOT 3 2 D", &["1, 0, 0 | 0, 1+D^2, D", "0, D, 1+D+D^2 | 1, 0, 0"]),
            ("CNOT 2 3", &["1, 0, 0 | 0, 1+D^2, 1+D+D^2", "0, 1+D^2, 1+D+D^2 | 1, 0, 0"]),
        ],
    )?;
    let sender: Vec<_> = end.gens.iter().rev().map(|g| (g.z[1..].to_vec(), g.x[1..].to_vec())).collect();
    let want: Vec<_> = rm(&["1+D^2, 1+D+D^2 | 0, 0", "0, 0 | 1+D^2, 1+D+D^2"])
        .gens
        .iter()
        .map(|g| (g.z.clone(), g.x.clone()))
        .collect();
    check!(sender == want, "final sender block differs");

    // infinite-depth example
    let hc = pm(&[&["1", "1+D"]]);
    let code = css_construct(&hc, &hc).map_err(|e| e.to_string())?;
    check_eq!(code.klass, CodeClass::InfiniteDepthEncoder);
    let want_r: RationalFn = "(1)/(1+D+D^2)".parse().unwrap();
    check!(
        code.encoder.iter().any(|g| matches!(g, ConvGate::Rcnot { r, .. } if *r == want_r)),
        "no 1/(1+D+D^2) gate in {:?}",
        code.encoder
    );
    check!(code.decoder.iter().all(|g| !g.is_infinite_depth()), "decoder has an infinite-depth gate");
    check!(verify_encoding(&code).map_err(|e| e.to_string())?.ok(), "infinite-depth code fails verification");
    let stab = rm(&["1, 1, (1)/(1+D+D^2) | 0, 0, 0", "0, 0, 0 | 1, 1, 0"]);
    let info = rm(&["0, 0, (1)/(1+D+D^2) | 0, 0, 0", "0, 0, 0 | 0, 1, 1+D^-1+D^-2"]);
    let enc = parse_gate_list("H 2\nCNOT 2 3\nRCNOT 3 (1)/(1+D+D^2)\nH 2\nH 3").unwrap();
    let s0 = rm(&["1, 1, 0 | 0, 0, 0", "0, 0, 0 | 1, 1, 0"]);
    let i0 = rm(&["0, 0, 0 | 0, 0, 1", "0, 0, 1 | 0, 0, 0"]);
    check_eq!(apply_gates(&s0, &enc).unwrap(), stab);
    check_eq!(apply_gates(&i0, &enc).unwrap(), info);
    let dec = parse_gate_list("CNOT 1 2\nCNOT 2 3 1+D^-1+D^-2\nH 2\nH 3").unwrap();
    let (s, i) = (apply_gates(&stab, &dec).unwrap(), apply_gates(&info, &dec).unwrap());
    // after the row additions the logical operators sit on the information qubit alone
    check_eq!(i.gens[0].add(&s.gens[0]), rm(&["0, 0, 0 | 0, 1, 0"]).gens[0]);
    check_eq!(i.gens[1], rm(&["0, 1, 0 | 0, 0, 0"]).gens[0]);
    Ok(())
}

fn criterion_8() -> Outcome {
    let code = free_ent_construct(&two_generator_code()).map_err(|e| e.to_string())?;
    check_eq!(code.c, 2);
    check_eq!(code.rates().0.to_string(), "1/2");
    check_eq!(code.target, two_generator_code());
    let rep = verify_encoding(&code).map_err(|e| e.to_string())?;
    check!(rep.stabilizer_ok, "encoded sender block does not span the stabilizer");
    check!(rep.logical_ok, "logical round trip fails");
    Ok(())
}

fn criterion_9() -> Outcome {
    let spec = example_spec();
    let code = build_grandfather(spec.params, &spec.encoder).map_err(|e| e.to_string())?;
    let t = syndrome_table(&code, 1, 2).map_err(|e| e.to_string())?;
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
    check_eq!(got, want);
    check!(t.is_unique(), "syndromes are not unique");

    let model = CorrectionModel::from_grandfather(&code);
    let dec = TableDecoder::new(model.table(1).map_err(|e| e.to_string())?);
    let r = exhaustive_single_errors(&model, &dec, 8).map_err(|e| e.to_string())?;
    check!(r.failures.is_empty(), "{} of {} cases left a residual", r.failures.len(), r.cases);

    let frames = |start: i64, fs: &[&str]| {
        let ps: Vec<PauliString> = fs.iter().map(|s| s.parse().unwrap()).collect();
        ConvGenerator::from_frames(start, &ps).unwrap()
    };
    let passive = [
        frames(-1, &["IIIII", "IXIXX", "IIZZZ"]),
        frames(-1, &["IZIZI", "IIZII", "IIIII"]),
        frames(-1, &["IZIII", "IIXII", "IIIII"]),
        frames(-1, &["IZIZI", "ZZIZI", "IIIII"]),
    ];
    for e in &passive {
        check_eq!(classify_error(&code, e).unwrap(), ErrorClass::Passive);
    }
    check_eq!(classify_error(&code, &passive[1].add(&passive[3].shift(2))).unwrap(), ErrorClass::Passive);
    Ok(())
}

fn criterion_10() -> Outcome {
    let u = ConvGenerator::parse_row("1+D^3, 1+D^2 | D^2, D").unwrap();
    let a = augment_single(&u).map_err(|e| e.to_string())?;
    check_eq!(a, ConvGenerator::parse_row("1+D^3, 1+D^2, D+D^2 | D^2, D, 1").unwrap());
    check!(shifted_product(&a, &a).unwrap().is_zero(), "augmented generator does not commute");
    let single = augment_multi(&ConvCheckMatrix::new(2, vec![u.clone()]).unwrap(), AugmentForm::Upper)
        .map_err(|e| e.to_string())?;
    check_eq!(protocol_yield(&single).to_string(), "1/2");
    let t = SyndromeTable::build(&[u], 2, &[], 1, 4).map_err(|e| e.to_string())?;
    let got: Vec<(String, String)> = t.entries.iter().map(|e| (e.label.clone(), bit_string(&e.syndrome))).collect();
    let want = [("X1", "1001"), ("Y1", "1011"), ("Z1", "0010"), ("X2", "1010"), ("Y2", "1110"), ("Z2", "0100")];
    check_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));

    let multi =
        augment_multi(&h("frame n=4\n1+D, D, 1, D | 0, 1, 0, 0\n0, 1, 0, 0 | 1+D, 1+D, 1, D"), AugmentForm::Lower)
            .map_err(|e| e.to_string())?;
    check_eq!(
        multi.stabilizer,
        h("frame n=6\n1+D, D, 1, D, D, 0 | 0, 1, 0, 0, 1, 0\n0, 1, 0, 0, D, D | 1+D, 1+D, 1, D, 0, 1")
    );
    check_eq!(multi.stabilizer.gens[0].pauli_frames(), "ZXZIXI|ZZIZZI");
    check_eq!(multi.stabilizer.gens[1].pauli_frames(), "XYXIIX|XXIXZZ");
    check!(multi.is_commuting(), "multi-generator augmentation does not commute");
    check_eq!(protocol_yield(&multi).to_string(), "1/2");

    let css =
        css_distill_augment(&h("frame n=3\n1+D, D, 1 | 0, 0, 0\n0, 0, 0 | 1+D, D, 1")).map_err(|e| e.to_string())?;
    check_eq!(css.stabilizer, h("frame n=4\n1+D, D, 1, D^-1+D | 0, 0, 0, 0\n0, 0, 0, 0 | 1+D, D, 1, 1"));
    check_eq!(protocol_yield(&css).to_string(), "1/3");
    Ok(())
}

fn timed(name: &str, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    check!(took < Duration::from_secs(10), "{name} took {took:?}");
    Ok(())
}

fn rand_gate(rng: &mut ChaCha8Rng, n: usize) -> ConvGate {
    let i = rng.random_range(0..n);
    let j = (i + rng.random_range(1..n)) % n;
    let f = loop {
        let f = rand_poly(rng, -2, 2);
        if !f.is_zero() {
            break f;
        }
    };
    match rng.random_range(0..8) {
        0 => ConvGate::Cnot { i, j, f },
        1 => ConvGate::H(i),
        2 => ConvGate::P(i),
        3 => ConvGate::Cphase { i, j, f },
        4 => ConvGate::CphaseSelf { i, k: rng.random_range(1..3) },
        5 => ConvGate::Swap(i, j),
        6 => ConvGate::Delay { i, l: rng.random_range(-2..3) },
        _ => {
            let den = f.delay_free().1;
            let den = if den.coeff(0) { den } else { LaurentPoly::one() };
            ConvGate::Rcnot { i, r: RationalFn::new(LaurentPoly::monomial(rng.random_range(-2..3)), den).unwrap() }
        }
    }
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    timed("smith", || {
        for case in 0..200 {
            let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=6));
            let m =
                PolyMatrix::from_rows((0..r).map(|_| (0..c).map(|_| rand_poly(&mut rng, 0, 4)).collect()).collect())
                    .unwrap();
            let s = smith_form(&m);
            check!(s.a.mul(&s.gamma).unwrap().mul(&s.b).unwrap() == m, "A Gamma B != M on case {case}");
            let f = s.invariant_factors();
            check!(f.windows(2).all(|w| w[0].divides(&w[1])), "divisibility chain broken on case {case}");
            check!(
                s.rank == rank_rational(&m.map(|x| RationalFn::from_poly(x.clone()))),
                "rank mismatch on case {case}"
            );
        }
        Ok(())
    })?;
    timed("gate invariance", || {
        for case in 0..200 {
            let n = rng.random_range(2..=4);
            let rows = rng.random_range(1..=3);
            let m = rand_check(&mut rng, n, rows, 2).to_rational();
            let g = rand_gate(&mut rng, n);
            let out = apply_conv_gate(&m, &g).map_err(|e| e.to_string())?;
            check!(shifted_omega(&out) == shifted_omega(&m), "Omega changed by {g} on case {case}");
        }
        Ok(())
    })?;
    timed("syndrome additivity", || {
        for case in 0..200 {
            let n = rng.random_range(2..=4);
            let rows = rng.random_range(1..=3);
            let m = rand_check(&mut rng, n, rows, 2);
            let e1 = rand_check(&mut rng, n, 1, 4).gens[0].shift(-2);
            let e2 = rand_check(&mut rng, n, 1, 4).gens[0].shift(-2);
            let s1 = syndrome_bits(&m.gens, &e1, 4).unwrap();
            let s2 = syndrome_bits(&m.gens, &e2, 4).unwrap();
            let xor: Vec<u8> = s1.iter().zip(&s2).map(|(a, b)| a ^ b).collect();
            check!(syndrome_bits(&m.gens, &e1.add(&e2), 4).unwrap() == xor, "additivity fails on case {case}");
        }
        Ok(())
    })?;
    timed("seed determinism", || {
        let model = CorrectionModel::from_stabilizer(&h("0,D,D | 1+D,1,1+D\n1+D,1+D,1 | 0,D,D"));
        let dec = TableDecoder::new(model.table(1).map_err(|e| e.to_string())?);
        let inj = Injection::Channel(PauliChannel::depolarizing(0.05).unwrap());
        for seed in 0..10 {
            let opts = SimOptions { trials: 50, frames: 12, seed, truncate_depth: 32 };
            let a = run_correction(&model, &dec, &inj, &opts).map_err(|e| e.to_string())?;
            let b = run_correction(&model, &dec, &inj, &opts).map_err(|e| e.to_string())?;
            check!(a == b, "seed {seed} gave different reports");
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = Vec::new();
    for (n, f) in criteria {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match res {
            Ok(()) => println!("criterion {n}: PASS"),
            Err(why) => {
                println!("criterion {n}: FAIL ({why})");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
