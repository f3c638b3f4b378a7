use std::path::PathBuf;
use std::process::ExitCode;

use admm_lp::harness::{non_monotone_points, to_csv, write_csv, write_json, DecoderKind, Experiment, ExperimentSpec};
use anyhow::{Context, Result};
use clap::Parser;

/// Frame-error-rate simulation of LDPC decoders over a BPSK/AWGN channel.
///
/// Prints CSV to stdout unless `--out` is given.
#[derive(Debug, Parser)]
#[command(name = "admm-lp", version)]
struct Args {
    /// Built-in code (tanner155, wigig672, ensemble1002-example) or a path to
    /// an `.alist` file or QC shift file.
    #[arg(long, default_value = "tanner155")]
    code: String,

    /// admm-double, admm-fixed, bp or min-sum.
    #[arg(long, default_value = "admm-double", value_parser = parse_decoder)]
    decoder: DecoderKind,

    #[arg(long, default_value_t = 0.1)]
    alpha: f64,

    #[arg(long, default_value_t = 60)]
    max_iters: usize,

    /// Eb/N0 points in dB, comma separated.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    snr_db: Vec<f64>,

    #[arg(long, default_value_t = 100)]
    target_frame_errors: u64,

    #[arg(long, default_value_t = 1_000_000)]
    max_frames: u64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    workers: Option<usize>,

    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// JSON output path (records plus the spec that produced them).
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_decoder(s: &str) -> Result<DecoderKind, String> {
    s.parse().map_err(|e: admm_lp::Error| e.to_string())
}

fn run(args: Args) -> Result<()> {
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let spec = ExperimentSpec {
        code: args.code,
        decoder: args.decoder,
        alpha: args.alpha,
        max_iters: args.max_iters,
        snr_points_db: args.snr_db,
        target_frame_errors: args.target_frame_errors,
        max_frames: args.max_frames,
        seed: args.seed,
        workers,
        ..Default::default()
    };
    let exp = Experiment::new(spec.clone()).with_context(|| format!("loading {:?}", spec.code))?;

    let mut records = Vec::new();
    for &snr in &spec.snr_points_db {
        let r = exp.run_point(snr)?;
        eprintln!(
            "{snr:>6} dB  frames {:>9}  errors {:>5}  FER {:.3e}  BER {:.3e}",
            r.frames, r.frame_errors, r.fer, r.ber
        );
        records.push(r);
    }
    for snr in non_monotone_points(&records) {
        eprintln!("warning: FER increased at {snr} dB");
    }

    match &args.out {
        Some(path) => write_csv(path, &records).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", to_csv(&records)),
    }
    if let Some(path) = &args.json {
        write_json(path, &spec, &records).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
