mod args;
mod commands;
mod error;
mod report;
mod value;

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use betanum::confluent::ConfluentParams;
use betanum::{Base, IntPolynomial, NumberField};
use clap::Parser;
use num_rational::BigRational;
use serde_json::{json, Value};

use args::{BaseArgs, Cli, Command, Format};
use error::CliError;
use report::{envelope, Outcome};

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| CliError::InvalidBase(format!("bad {what} entry {x:?}"))))
        .collect()
}

fn confluent_params(args: &BaseArgs) -> Result<Option<ConfluentParams>, CliError> {
    let Some(s) = &args.confluent else { return Ok(None) };
    let v: Vec<u32> = parse_list(s, "confluent")?;
    let [d, m, n] = v[..] else {
        return Err(CliError::InvalidBase("--confluent takes d,m,n".into()));
    };
    ConfluentParams::new(d as usize, m, n)
        .map(Some)
        .map_err(|e| CliError::InvalidBase(e.to_string()))
}

fn build_base(args: &BaseArgs, cap: usize) -> Result<(Base, Option<ConfluentParams>, Value), CliError> {
    let params = confluent_params(args)?;
    let hint = match &args.root_hint {
        Some(h) => {
            let v: Vec<BigRational> = h
                .split(',')
                .map(|x| BigRational::from_str(x.trim()).map_err(|_| CliError::InvalidBase(format!("bad hint {x:?}"))))
                .collect::<Result<_, _>>()?;
            let [lo, hi] = <[BigRational; 2]>::try_from(v)
                .map_err(|_| CliError::InvalidBase("--root-hint takes lo,hi".into()))?;
            Some((lo, hi))
        }
        None => None,
    };
    let (poly, spec) = match (&args.poly, params) {
        (Some(p), None) => {
            let c: Vec<i64> = parse_list(p, "polynomial")?;
            (IntPolynomial::from_i64(&c), json!({ "poly": c }))
        }
        (None, Some(p)) => (IntPolynomial::from_i64(&p.coeffs()), json!({ "confluent": [p.d, p.m, p.n] })),
        _ => return Err(CliError::InvalidBase("give exactly one of --poly or --confluent".into())),
    };
    let field = NumberField::new(poly, hint).map_err(|e| CliError::InvalidBase(e.to_string()))?;
    let base = Base::with_cap(field, cap).map_err(|e| CliError::InvalidBase(e.to_string()))?;
    let echo = json!({
        "spec": spec,
        "polynomial": base.field().minpoly().to_string(),
        "beta": base.beta().to_decimal(12),
    });
    Ok((base, params, echo))
}

fn run(cli: &Cli) -> Result<(String, Value, Outcome), CliError> {
    if let Command::Sweep { max_d, max_m, report } = &cli.command {
        return Ok(("sweep".into(), Value::Null, commands::sweep(*max_d, *max_m, report)?));
    }
    let (base, params, echo) = build_base(&cli.base, cli.cap)?;
    let (name, outcome) = match &cli.command {
        Command::Classify => ("classify", commands::classify(&base)?),
        Command::Expand { sign, value } => ("expand", commands::expand(&base, *sign, value)?),
        Command::Integers { sign, window } => ("integers", commands::integers(&base, *sign, window)?),
        Command::Spectrum { sign, window, digit_max } => {
            ("spectrum", commands::spectrum(&base, *sign, window, *digit_max)?)
        }
        Command::Morphism { letters, w_cap } => {
            let p = params.or_else(|| confluent_shape(&base));
            ("morphism", commands::morphism(&base, p, *letters, *w_cap)?)
        }
        Command::Verify { report } => ("verify", commands::verify(&base, report)?),
        Command::Sweep { .. } => unreachable!("handled above"),
    };
    Ok((name.into(), echo, outcome))
}

fn confluent_shape(base: &Base) -> Option<ConfluentParams> {
    let (d, m, n) = betanum::spectrum::confluent_membership(base).parameters?;
    ConfluentParams::new(d, m, n).ok()
}

fn render(cli: &Cli, name: &str, echo: Value, outcome: &Outcome, ms: f64) -> Result<String, CliError> {
    let timing = cli.timing.then_some(ms);
    Ok(match cli.format {
        Format::Json => {
            let env = envelope(name, echo, outcome, timing);
            serde_json::to_string_pretty(&env).expect("serialisable") + "\n"
        }
        Format::Csv => outcome
            .csv
            .clone()
            .ok_or_else(|| CliError::Usage(format!("{name} has no CSV form; use --format json")))?,
        Format::Text => {
            let mut t = outcome.text.clone();
            for n in &outcome.notes {
                t += &format!("note: {n}\n");
            }
            if let Some(ms) = timing {
                t += &format!("time: {ms:.1} ms\n");
            }
            t
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli).and_then(|(name, echo, outcome)| {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let out = render(&cli, &name, echo, &outcome, ms)?;
        match &cli.output {
            Some(path) => std::fs::write(path, out)?,
            None => std::io::stdout().write_all(out.as_bytes())?,
        }
        Ok(outcome.exit)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
