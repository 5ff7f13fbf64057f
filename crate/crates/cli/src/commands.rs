use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use eaqcc::algebra::gf2::parse_bin_matrix;
use eaqcc::algebra::gf4::parse_gf4_matrix;
use eaqcc::block_ea::{block_sgsop, ebits_css, ebits_general, ebits_gf4};
use eaqcc::circuits::{
    css_construct, free_ent_construct, general_construct, verify_encoding, CodeClass, ConvGate, EAQConvCode,
};
use eaqcc::conv_core::{
    conv_ebits, conv_ebits_gf4, expand_check, parse_classical, parse_gf4_conv, poly_sgsop, ConvCheckMatrix,
};
use eaqcc::distill::{augment_multi, augment_single, css_distill_augment, AugmentForm, DistillConstruction};
use eaqcc::grandfather::{build_grandfather, example_spec, syndrome_table, GrandfatherSpec};
use eaqcc::pauli::BlockCheckMatrix;
use eaqcc::sim::{
    exhaustive_single_errors, run_correction, CorrectionModel, Decoder, Injection, PauliChannel, SimOptions,
    SlidingDecoder, TableDecoder, TrialReport,
};

use crate::output::{emit, from_json, parsed, read, CliError, Format};
use crate::{Command, DecoderKind, DistillMode, EbitsArgs, Form, InjectionKind, SimArgs};

type Out = Result<String, CliError>;

pub fn run(cmd: Command, format: Format) -> Out {
    match cmd {
        Command::Ebits(a) => ebits(a, format),
        Command::Gramschmidt { file, conv, l_max } => gramschmidt(&file, conv, l_max, format),
        Command::Expand { factor, file } => {
            let h = conv_matrix(&file)?;
            let e = expand_check(&h, factor)?;
            Ok(emit(format, "expanded_check_matrix", &e, || e.to_string()))
        }
        Command::CssConstruct { h1, h2 } => {
            let a = parsed(&h1, parse_classical(&read(&h1)?))?;
            let b = match h2 {
                Some(p) => parsed(&p, parse_classical(&read(&p)?))?,
                None => a.clone(),
            };
            code_output(css_construct(&a, &b)?, format)
        }
        Command::Construct { file, l_max } => {
            let d = poly_sgsop(&conv_matrix(&file)?, l_max)?;
            code_output(general_construct(&d)?, format)
        }
        Command::FreeConstruct { file } => code_output(free_ent_construct(&conv_matrix(&file)?)?, format),
        Command::Distill { mode, form, file } => distill(mode, form, &file, format),
        Command::GrandfatherTable { bundle, weight, window, example_bundle } => {
            if example_bundle {
                let spec = example_spec();
                return Ok(serde_json::to_string_pretty(&spec).expect("bundle serializes") + "\n");
            }
            let spec = grandfather_spec(bundle.as_deref())?;
            let code = build_grandfather(spec.params, &spec.encoder)?;
            let t = syndrome_table(&code, weight, window)?;
            Ok(emit(format, "syndrome_table", &t, || t.to_csv()))
        }
        Command::Simulate(a) => simulate(a, format),
        Command::Verify { file } => {
            let code: EAQConvCode = from_json(&file, &read(&file)?)?;
            let rep = verify_encoding(&code)?;
            if !rep.ok() {
                return Err(CliError::Failed(format!(
                    "stabilizer_ok={} logical_ok={}",
                    rep.stabilizer_ok, rep.logical_ok
                )));
            }
            Ok(emit(format, "verify_report", &rep, || {
                format!("stabilizer_ok true\nlogical_ok true\ndelays {:?}\n", rep.delays)
            }))
        }
    }
}

fn conv_matrix(path: &Path) -> Result<ConvCheckMatrix, CliError> {
    parsed(path, ConvCheckMatrix::parse(&read(path)?))
}

fn grandfather_spec(bundle: Option<&Path>) -> Result<GrandfatherSpec, CliError> {
    match bundle {
        Some(p) => from_json(p, &read(p)?),
        None => Ok(example_spec()),
    }
}

#[derive(Serialize)]
struct Ebits {
    formula: &'static str,
    ebits: usize,
}

fn ebits(a: EbitsArgs, format: Format) -> Out {
    let first = &a.files[0];
    let (formula, n) = if a.css {
        let second = a.files.get(1).unwrap_or(first);
        let h1 = parsed(first, parse_bin_matrix(&read(first)?))?;
        let h2 = parsed(second, parse_bin_matrix(&read(second)?))?;
        ("css", ebits_css(&h1, &h2)?)
    } else if a.gf4 {
        ("gf4", ebits_gf4(&parsed(first, parse_gf4_matrix(&read(first)?))?))
    } else if a.conv {
        ("conv", conv_ebits(&conv_matrix(first)?))
    } else if a.gf4_conv {
        ("gf4_conv", conv_ebits_gf4(&parsed(first, parse_gf4_conv(&read(first)?))?))
    } else {
        ("general", ebits_general(&parsed(first, BlockCheckMatrix::parse(&read(first)?))?))
    };
    let out = Ebits { formula, ebits: n };
    Ok(emit(format, "ebits", &out, || format!("{n}\n")))
}

fn gramschmidt(file: &Path, conv: bool, l_max: usize, format: Format) -> Out {
    if conv {
        let d = poly_sgsop(&conv_matrix(file)?, l_max)?;
        return Ok(emit(format, "conv_decomposition", &d, || {
            format!("l {}\nc {}\na {}\nreordered:\n{}finitized:\n{}", d.l, d.c, d.a, d.reordered, d.finitized)
        }));
    }
    let h = parsed(file, BlockCheckMatrix::parse(&read(file)?))?;
    let ea = block_sgsop(&h)?;
    Ok(emit(format, "block_decomposition", &ea, || format!("c {}\na {}\nreordered:\n{}", ea.c, ea.a, ea.reordered)))
}

fn gates_text(gates: &[ConvGate]) -> String {
    gates.iter().map(|g| format!("{g}\n")).collect()
}

fn code_output(code: EAQConvCode, format: Format) -> Out {
    Ok(emit(format, "code", &code, || {
        let (r1, r2) = code.rates();
        let klass = match code.klass {
            CodeClass::FiniteDepth => "finite-depth",
            CodeClass::InfiniteDepthEncoder => "infinite-depth encoder",
        };
        let mut s = String::new();
        writeln!(s, "params {}", code.params()).unwrap();
        writeln!(s, "class {klass}").unwrap();
        writeln!(s, "rates {r1} {r2}").unwrap();
        write!(s, "target:\n{}", code.target).unwrap();
        write!(s, "encoder:\n{}", gates_text(&code.encoder)).unwrap();
        write!(s, "decoder:\n{}", gates_text(&code.decoder)).unwrap();
        s
    }))
}

fn distill(mode: DistillMode, form: Form, file: &Path, format: Format) -> Out {
    let h = conv_matrix(file)?;
    let d: DistillConstruction = match mode {
        DistillMode::Single => {
            if h.len() != 1 {
                return Err(CliError::Build(eaqcc::Error::InvalidParams(format!(
                    "single mode takes one generator, got {}",
                    h.len()
                ))));
            }
            let mut d = augment_multi(&h, AugmentForm::Upper)?;
            d.stabilizer.gens[0] = augment_single(&h.gens[0])?;
            d
        }
        DistillMode::Multi => {
            let form = match form {
                Form::Upper => AugmentForm::Upper,
                Form::Lower => AugmentForm::Lower,
            };
            augment_multi(&h, form)?
        }
        DistillMode::Css => css_distill_augment(&h)?,
    };
    Ok(emit(format, "distillation", &d, || {
        let cols: Vec<String> = d.noiseless_columns.iter().map(|c| (c + 1).to_string()).collect();
        let mut s = format!(
            "n {}\nm {}\nyield {}\ncatalytic_ebits {}\nnoiseless_columns {}\nstabilizer:\n{}paulis:\n",
            d.n,
            d.m,
            d.yield_,
            d.catalytic_ebits,
            cols.join(" "),
            d.stabilizer
        );
        for g in &d.stabilizer.gens {
            writeln!(s, "{}", g.pauli_frames()).unwrap();
        }
        s
    }))
}

#[derive(Serialize)]
struct SimOutput {
    p: f64,
    decoder: String,
    injection: Injection,
    weight: usize,
    #[serde(flatten)]
    report: TrialReport,
}

fn simulate(a: SimArgs, format: Format) -> Out {
    let model = if a.grandfather {
        let spec = grandfather_spec(a.file.as_deref())?;
        CorrectionModel::from_grandfather(&build_grandfather(spec.params, &spec.encoder)?)
    } else {
        let Some(file) = a.file.as_deref() else {
            return Err(CliError::Input("simulate needs a stabilizer file or --grandfather".into()));
        };
        CorrectionModel::from_stabilizer(&conv_matrix(file)?)
    };
    let table = model.table(a.weight)?;
    if !table.is_unique() {
        eprintln!("warning: syndrome table has repeated syndromes; the decoder keeps the first entry");
    }
    let aligned = TableDecoder::new(table.clone());
    if a.exhaustive {
        let r = exhaustive_single_errors(&model, &aligned, a.frames)?;
        return Ok(emit(format, "exhaustive_report", &r, || {
            let mut s = format!("cases {}\nfailures {}\n", r.cases, r.failures.len());
            for f in &r.failures {
                writeln!(s, "  {f}").unwrap();
            }
            s
        }));
    }
    let injection = match a.injection {
        InjectionKind::Channel => Injection::Channel(PauliChannel::depolarizing(a.p)?),
        InjectionKind::Alternate => Injection::OnePerAlignedFrame { spacing: aligned.spacing },
    };
    let sliding = SlidingDecoder::new(table);
    let which = a.decoder.unwrap_or(match a.injection {
        InjectionKind::Alternate => DecoderKind::Aligned,
        InjectionKind::Channel => DecoderKind::Sliding,
    });
    let (decoder, decoder_name): (&dyn Decoder, &str) = match which {
        DecoderKind::Sliding => (&sliding, "sliding"),
        DecoderKind::Aligned => (&aligned, "aligned"),
    };
    let opts = SimOptions { trials: a.trials, frames: a.frames, seed: a.seed, truncate_depth: a.truncate_depth };
    let report = run_correction(&model, decoder, &injection, &opts)?;
    let kind = match a.injection {
        InjectionKind::Channel => "channel",
        InjectionKind::Alternate => "alternate",
    };
    let out = SimOutput { p: a.p, decoder: decoder_name.to_string(), injection, weight: a.weight, report };
    let r = &out.report;
    if a.csv && format == Format::Text {
        return Ok(format!(
            "seed,trials,frames,p,truncate_depth,injection,decoder,raw_error_rate,residual_logical_rate,syndrome_miss_rate\n\
             {},{},{},{},{},{kind},{decoder_name},{},{},{}\n",
            r.seed, r.trials, r.frames, out.p, r.truncate_depth, r.raw_error_rate, r.residual_logical_rate,
            r.syndrome_miss_rate
        ));
    }
    Ok(emit(format, "trial_report", &out, || {
        format!(
            "# seed={} trials={} frames={} p={} truncate_depth={} injection={kind} decoder={decoder_name}\n\
             raw_error_rate {}\nresidual_logical_rate {}\nsyndrome_miss_rate {}\n",
            r.seed,
            r.trials,
            r.frames,
            out.p,
            r.truncate_depth,
            r.raw_error_rate,
            r.residual_logical_rate,
            r.syndrome_miss_rate
        )
    }))
}
