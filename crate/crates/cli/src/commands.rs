use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::Rng;

use splitkit::aba::enumerate_extensions;
use splitkit::finder::{
    dependency_graph, find_balanced_splitting, find_quasi_splitting, find_setaf_splitting,
    primal_graph,
};
use splitkit::format::{
    load_aba, parse_id_list, parse_setaf, write_aba, write_extensions, write_setaf,
};
use splitkit::generate::{
    random_abaf, random_abaf_seeded, random_setaf, random_setaf_seeded, rng, AbaParams, SetafParams,
};
use splitkit::instantiate::aba_to_setaf;
use splitkit::split::aba::make_splitting;
use splitkit::split::quasi::{make_quasi_splitting, QuasiSplitting};
use splitkit::split::setaf::make_splitting as make_setaf_splitting;
use splitkit::split::Oracle;
use splitkit::{setaf, Abaf, ArgId, AssumptionSet, AtomId, Error, Semantics, Setaf};

use crate::{Command, Format, GenSize, Input, Mismatch, Mode, SolveOpts};

enum Framework {
    Aba(Abaf),
    Setaf(Setaf),
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve { input, solve, mode } => solve_cmd(&input, &solve, mode),
        Command::SplitSolve { input, solve } => solve_cmd(&input, &solve, Mode::Split),
        Command::ParamSplit { input, solve } => {
            let solve = SolveOpts {
                semantics: Semantics::Stb,
                ..solve
            };
            solve_cmd(&input, &solve, Mode::Param)
        }
        Command::Instantiate {
            input,
            all_supports,
            output,
        } => match load(&input)? {
            Framework::Aba(d) => emit(
                &write_setaf(&aba_to_setaf(&d, all_supports)?),
                output.as_deref(),
            ),
            Framework::Setaf(_) => bail!(Error::Validation(
                "instantiate expects an ABA framework".into()
            )),
        },
        Command::FindSplit {
            input,
            balance,
            quasi,
            dot,
            output,
        } => {
            let text = find_split(&load(&input)?, balance, quasi, dot)?;
            emit(&text, output.as_deref())
        }
        Command::Gen {
            format,
            seed,
            size,
            output,
        } => {
            let text = match format {
                Format::Aba => write_aba(&random_abaf_seeded(aba_params(size), seed)),
                Format::Setaf => write_setaf(&random_setaf_seeded(setaf_params(size), seed)),
            };
            emit(&text, output.as_deref())
        }
        Command::Check {
            format,
            seed,
            count,
            semantics,
            mode,
            balance,
            guard,
        } => check(format, seed, count, semantics, mode, balance, guard),
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn detect(text: &str) -> Option<Format> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))?;
    let mut tokens = header.split_whitespace();
    match (tokens.next(), tokens.next()) {
        (Some("p"), Some("aba")) => Some(Format::Aba),
        (Some("p"), Some("setaf")) => Some(Format::Setaf),
        _ => None,
    }
}

fn load(input: &Input) -> Result<Framework> {
    let text = read_input(&input.path)?;
    let context = || format!("in {}", input.path.display());
    match input
        .format
        .or_else(|| detect(&text))
        .unwrap_or(Format::Aba)
    {
        Format::Aba => {
            let (d, warnings) = load_aba(&text, input.strict_dummy).with_context(context)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            Ok(Framework::Aba(d))
        }
        Format::Setaf => Ok(Framework::Setaf(parse_setaf(&text).with_context(context)?)),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_split_set(path: &Path, n: usize) -> Result<BTreeSet<usize>> {
    let text = read_input(path)?;
    parse_id_list(&text, n).with_context(|| format!("in {}", path.display()))
}

fn id_line(ids: impl IntoIterator<Item = usize>) -> String {
    let ids: Vec<String> = ids.into_iter().map(|i| (i + 1).to_string()).collect();
    ids.join(" ")
}

fn quasi_window(balance: f64) -> (f64, f64) {
    ((balance - 0.25).max(0.0), (balance + 0.25).min(1.0))
}

fn solve_cmd(input: &Input, opts: &SolveOpts, mode: Mode) -> Result<()> {
    let oracle = Oracle { guard: opts.guard };
    let sem = opts.semantics;
    let text = match load(input)? {
        Framework::Aba(d) => {
            let exts = solve_aba(&d, opts, mode, &oracle)?;
            write_extensions(&exts, |a| d.name(*a))
        }
        Framework::Setaf(sf) => {
            let exts = match mode {
                Mode::Direct => setaf::enumerate_extensions(&sf, sem, opts.guard)?,
                Mode::Split => {
                    let a1: BTreeSet<ArgId> = match &opts.split_set {
                        Some(path) => read_split_set(path, sf.len())?
                            .into_iter()
                            .map(ArgId::from)
                            .collect(),
                        None => find_setaf_splitting(&sf, opts.balance)?,
                    };
                    eprintln!("split set: {}", sf.display_set(&a1));
                    make_setaf_splitting(&sf, &a1)?.solve(sem, &oracle)?
                }
                Mode::Param => bail!(Error::Validation(
                    "quasi-splitting applies to ABA frameworks only".into()
                )),
            };
            write_extensions(&exts, |a| sf.name(*a))
        }
    };
    emit(&text, None)
}

fn solve_aba(
    d: &Abaf,
    opts: &SolveOpts,
    mode: Mode,
    oracle: &Oracle,
) -> Result<Vec<AssumptionSet>> {
    let sem = opts.semantics;
    if mode == Mode::Direct {
        return Ok(enumerate_extensions(d, sem, !d.is_flat(), opts.guard)?);
    }
    if !d.is_flat() {
        bail!(Error::NonFlat("splitting requires a flat framework".into()));
    }
    let given: Option<BTreeSet<AtomId>> = match &opts.split_set {
        Some(path) => Some(
            read_split_set(path, d.len())?
                .into_iter()
                .map(AtomId::from)
                .collect(),
        ),
        None => None,
    };
    if mode == Mode::Param {
        if sem != Semantics::Stb {
            bail!(Error::UnsupportedSemantics(sem.token()));
        }
        let q = match given {
            Some(s) => make_quasi_splitting(d, &s)?,
            None => find_quasi_splitting(d, quasi_window(opts.balance))?,
        };
        eprintln!(
            "quasi-splitting: {} (k = {})",
            d.display_set(q.set()),
            q.k()
        );
        return Ok(q.solve(oracle)?);
    }
    let s = match given {
        Some(s) => s,
        None => find_balanced_splitting(d, opts.balance)?,
    };
    eprintln!("split set: {}", d.display_set(&s));
    Ok(make_splitting(d, &s)?.solve(sem, oracle)?)
}

fn quasi_report(d: &Abaf, q: &QuasiSplitting<'_>) -> String {
    format!(
        "# k = {}\n# vulnerabilities: {}\n# atoms: {}\n{}\n",
        q.k(),
        d.display_set(q.vulnerabilities()),
        d.display_set(q.set()),
        id_line(q.set().iter().map(|a| a.index()))
    )
}

fn find_split(framework: &Framework, balance: f64, quasi: bool, dot: bool) -> Result<String> {
    match framework {
        Framework::Aba(d) if dot => Ok(dependency_graph(d).to_dot()),
        Framework::Setaf(sf) if dot => Ok(primal_graph(sf).to_dot()),
        Framework::Aba(d) if quasi => Ok(quasi_report(
            d,
            &find_quasi_splitting(d, quasi_window(balance))?,
        )),
        Framework::Setaf(_) if quasi => bail!(Error::Validation(
            "quasi-splitting applies to ABA frameworks only".into()
        )),
        Framework::Aba(d) => {
            let s = find_balanced_splitting(d, balance)?;
            Ok(format!(
                "# atoms: {}\n{}\n",
                d.display_set(&s),
                id_line(s.iter().map(|a| a.index()))
            ))
        }
        Framework::Setaf(sf) => {
            let a1 = find_setaf_splitting(sf, balance)?;
            Ok(format!(
                "# arguments: {}\n{}\n",
                sf.display_set(&a1),
                id_line(a1.iter().map(|a| a.index()))
            ))
        }
    }
}

fn aba_params(size: GenSize) -> AbaParams {
    AbaParams {
        assumptions: size.assumptions,
        extra_atoms: size.extra_atoms,
        rules: size.rules,
        max_body: size.max_body,
    }
}

fn setaf_params(size: GenSize) -> SetafParams {
    SetafParams {
        args: size.args,
        attacks: size.attacks,
        max_tail: size.max_tail,
    }
}

/// Outcome of checking one generated instance: `None` when it admits no
/// nontrivial splitting, otherwise the split set and whether both results
/// agree.
type Checked = Option<(Vec<usize>, bool)>;

fn check_aba(
    d: &Abaf,
    sem: Semantics,
    mode: Mode,
    balance: f64,
    oracle: &Oracle,
) -> Result<Checked> {
    let direct = enumerate_extensions(d, sem, false, oracle.guard)?;
    let (set, split) = match mode {
        Mode::Param => match find_quasi_splitting(d, quasi_window(balance)) {
            Ok(q) => (q.set().clone(), q.solve(oracle)?),
            Err(Error::DegenerateSplit) => return Ok(None),
            Err(e) => return Err(e.into()),
        },
        _ => match find_balanced_splitting(d, balance) {
            Ok(s) => {
                let split = make_splitting(d, &s)?.solve(sem, oracle)?;
                (s, split)
            }
            Err(Error::DegenerateSplit) => return Ok(None),
            Err(e) => return Err(e.into()),
        },
    };
    Ok(Some((
        set.iter().map(|a| a.index()).collect(),
        split == direct,
    )))
}

fn check_setaf(sf: &Setaf, sem: Semantics, balance: f64, oracle: &Oracle) -> Result<Checked> {
    let a1 = match find_setaf_splitting(sf, balance) {
        Ok(a1) => a1,
        Err(Error::DegenerateSplit) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let direct = setaf::enumerate_extensions(sf, sem, oracle.guard)?;
    let split = make_setaf_splitting(sf, &a1)?.solve(sem, oracle)?;
    Ok(Some((
        a1.iter().map(|a| a.index()).collect(),
        split == direct,
    )))
}

fn check(
    format: Format,
    seed: u64,
    count: usize,
    sem: Semantics,
    mode: Mode,
    balance: f64,
    guard: usize,
) -> Result<()> {
    if mode == Mode::Direct {
        bail!(Error::Validation(
            "check compares against --mode split or param".into()
        ));
    }
    if mode == Mode::Param && (format == Format::Setaf || sem != Semantics::Stb) {
        bail!(Error::Validation(
            "param mode checks ABA frameworks under stb".into()
        ));
    }
    let oracle = Oracle { guard };
    let mut r = rng(seed);
    let mut split = 0;
    for i in 0..count {
        let (text, checked) = match format {
            Format::Aba => {
                let params = AbaParams {
                    assumptions: r.gen_range(1..=7),
                    extra_atoms: r.gen_range(0..=3),
                    rules: r.gen_range(0..=10),
                    max_body: 3,
                };
                let d = random_abaf(params, &mut r);
                (write_aba(&d), check_aba(&d, sem, mode, balance, &oracle)?)
            }
            Format::Setaf => {
                let params = SetafParams {
                    args: r.gen_range(1..=8),
                    attacks: r.gen_range(0..=10),
                    max_tail: 3,
                };
                let sf = random_setaf(params, &mut r);
                (write_setaf(&sf), check_setaf(&sf, sem, balance, &oracle)?)
            }
        };
        match checked {
            None => {}
            Some((_, true)) => split += 1,
            Some((set, false)) => {
                print!(
                    "mismatch on instance {i} under {sem}\n{text}# split set\n{}\n",
                    id_line(set)
                );
                bail!(Mismatch);
            }
        }
    }
    println!("checked {count} instances, {split} split, 0 mismatches");
    Ok(())
}
