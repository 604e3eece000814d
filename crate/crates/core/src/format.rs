//! Line-based text formats for frameworks, extensions and splitting sets.
//!
//! ABA files start with `p aba <n>`; atoms are the ids `1..=n`. `a <i>`
//! declares an assumption, `c <i> <j>` gives its contrary, `r <h> <b>...`
//! declares a rule and `# name <i> <s>` names an atom. SETAF files start with
//! `p setaf <n>` and list attacks as `e <head> <tail>...` with a nonempty
//! tail. Other lines starting with `#` are comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::aba::{Abaf, AtomId, Rule};
use crate::error::{Error, Result};
use crate::setaf::{ArgId, Attack, Setaf};

struct Lines<'a> {
    kind: &'static str,
    n: Option<usize>,
    names: BTreeMap<usize, String>,
    body: Vec<(usize, Vec<&'a str>)>,
}

fn tokenize<'a>(text: &'a str, kind: &'static str) -> Result<Lines<'a>> {
    let mut lines = Lines {
        kind,
        n: None,
        names: BTreeMap::new(),
        body: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["#", "name", id, name, ..] => {
                let id = lines.id(line, id)?;
                if lines.names.insert(id, name.to_string()).is_some() {
                    return Err(Error::parse(line, format!("atom {} named twice", id + 1)));
                }
            }
            [first, ..] if first.starts_with('#') => {}
            ["p", k, n] if *k == kind => {
                if lines.n.is_some() {
                    return Err(Error::parse(line, "duplicate header"));
                }
                let n = n
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid size `{n}`")))?;
                lines.n = Some(n);
            }
            ["p", ..] => {
                return Err(Error::parse(
                    line,
                    format!("expected header `p {kind} <n>`"),
                ))
            }
            _ => {
                if lines.n.is_none() {
                    return Err(Error::parse(line, format!("missing header `p {kind} <n>`")));
                }
                lines.body.push((line, tokens));
            }
        }
    }
    if lines.n.is_none() {
        return Err(Error::parse(0, format!("missing header `p {kind} <n>`")));
    }
    Ok(lines)
}

impl Lines<'_> {
    /// Parses a 1-based id into a 0-based index. Before the header is seen
    /// the range cannot be checked; names are checked again in `names`.
    fn id(&self, line: usize, token: &str) -> Result<usize> {
        let id: usize = token
            .parse()
            .map_err(|_| Error::parse(line, format!("invalid id `{token}`")))?;
        match self.n {
            _ if id == 0 => Err(Error::parse(line, "ids start at 1")),
            Some(n) if id > n => Err(Error::parse(line, format!("id {id} exceeds {n}"))),
            _ => Ok(id - 1),
        }
    }

    fn names(&self) -> Result<Vec<String>> {
        let n = self.n.unwrap();
        if let Some((&id, _)) = self.names.iter().find(|(&id, _)| id >= n) {
            return Err(Error::parse(
                0,
                format!("name for id {} exceeds {n}", id + 1),
            ));
        }
        Ok((0..n)
            .map(|i| {
                self.names
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| (i + 1).to_string())
            })
            .collect())
    }

    fn unexpected(&self, line: usize, tokens: &[&str]) -> Error {
        Error::parse(
            line,
            format!("unexpected `{}` in {} file", tokens.join(" "), self.kind),
        )
    }
}

/// Parses an ABA file without applying any load policy.
pub fn parse_aba(text: &str) -> Result<Abaf> {
    let lines = tokenize(text, "aba")?;
    let mut assumptions = BTreeSet::new();
    let mut contraries: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rules = Vec::new();
    for (line, tokens) in &lines.body {
        match tokens.as_slice() {
            ["a", i] => {
                assumptions.insert(lines.id(*line, i)?);
            }
            ["c", i, j] => {
                let (i, j) = (lines.id(*line, i)?, lines.id(*line, j)?);
                if contraries.insert(i, j).is_some_and(|old| old != j) {
                    return Err(Error::parse(
                        *line,
                        format!("second contrary for {}", i + 1),
                    ));
                }
            }
            ["r", h, body @ ..] => {
                let head = AtomId::from(lines.id(*line, h)?);
                let body = body
                    .iter()
                    .map(|b| lines.id(*line, b).map(AtomId::from))
                    .collect::<Result<Vec<_>>>()?;
                rules.push(Rule::new(head, body));
            }
            _ => return Err(lines.unexpected(*line, tokens)),
        }
    }
    let names = lines.names()?;
    if let Some(&a) = assumptions.iter().find(|a| !contraries.contains_key(a)) {
        return Err(Error::MissingContrary(names[a].clone()));
    }
    if let Some(&i) = contraries.keys().find(|i| !assumptions.contains(i)) {
        return Err(Error::NotAnAssumption(names[i].clone()));
    }
    let pairs = contraries
        .into_iter()
        .map(|(a, c)| (AtomId::from(a), AtomId::from(c)));
    Abaf::new(names, pairs, rules)
}

/// Parses an ABA file and applies the load policy: rules that can never fire
/// are removed (and reported) unless `strict_dummy` is set, in which case
/// they are an error.
pub fn load_aba(text: &str, strict_dummy: bool) -> Result<(Abaf, Vec<String>)> {
    let abaf = parse_aba(text)?;
    let report = abaf.validate();
    if report.dummy_rules.is_empty() {
        return Ok((abaf, Vec::new()));
    }
    let shown: Vec<String> = report
        .dummy_rules
        .iter()
        .map(|&i| abaf.display_rule(&abaf.rules()[i]))
        .collect();
    if strict_dummy {
        return Err(Error::Validation(format!(
            "rules that can never fire: {}",
            shown.join("; ")
        )));
    }
    let warnings = shown
        .into_iter()
        .map(|r| format!("removed rule that can never fire: {r}"))
        .collect();
    Ok((abaf.without_rules(&report.dummy_rules), warnings))
}

fn name_lines(out: &mut String, names: &[String]) {
    for (i, name) in names.iter().enumerate() {
        if *name != (i + 1).to_string() {
            let _ = writeln!(out, "# name {} {name}", i + 1);
        }
    }
}

pub fn write_aba(abaf: &Abaf) -> String {
    let mut out = format!("p aba {}\n", abaf.len());
    name_lines(&mut out, abaf.names());
    for &a in abaf.assumptions() {
        let _ = writeln!(out, "a {}", a.index() + 1);
    }
    for &a in abaf.assumptions() {
        let _ = writeln!(
            out,
            "c {} {}",
            a.index() + 1,
            abaf.contrary(a).unwrap().index() + 1
        );
    }
    for rule in abaf.rules() {
        out.push_str(&format!("r {}", rule.head.index() + 1));
        for b in &rule.body {
            let _ = write!(out, " {}", b.index() + 1);
        }
        out.push('\n');
    }
    out
}

pub fn parse_setaf(text: &str) -> Result<Setaf> {
    let lines = tokenize(text, "setaf")?;
    let mut attacks = Vec::new();
    for (line, tokens) in &lines.body {
        match tokens.as_slice() {
            ["e", _] => return Err(Error::parse(*line, "attack with empty tail")),
            ["e", h, tail @ ..] => {
                let head = ArgId::from(lines.id(*line, h)?);
                let tail = tail
                    .iter()
                    .map(|t| lines.id(*line, t).map(ArgId::from))
                    .collect::<Result<Vec<_>>>()?;
                attacks.push(Attack::new(tail, head));
            }
            _ => return Err(lines.unexpected(*line, tokens)),
        }
    }
    Setaf::new(lines.names()?, attacks)
}

pub fn write_setaf(sf: &Setaf) -> String {
    let mut out = format!("p setaf {}\n", sf.len());
    name_lines(&mut out, sf.names());
    for att in sf.attacks() {
        let _ = write!(out, "e {}", att.head.index() + 1);
        for t in &att.tail {
            let _ = write!(out, " {}", t.index() + 1);
        }
        out.push('\n');
    }
    out
}

/// One `E` line per extension, members in ascending id order; `NO` when
/// there are none. `extensions` must already be in canonical order.
pub fn write_extensions<'a, T: 'a>(
    extensions: impl IntoIterator<Item = &'a BTreeSet<T>>,
    name: impl Fn(&T) -> &'a str,
) -> String {
    let mut out = String::new();
    for e in extensions {
        out.push('E');
        for m in e {
            out.push(' ');
            out.push_str(name(m));
        }
        out.push('\n');
    }
    if out.is_empty() {
        out.push_str("NO\n");
    }
    out
}

/// A splitting-set file: whitespace-separated 1-based ids; `#` comments.
pub fn parse_id_list(text: &str, n: usize) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        for token in content.split_whitespace() {
            let id: usize = token
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("invalid id `{token}`")))?;
            if id == 0 || id > n {
                return Err(Error::parse(i + 1, format!("id {id} outside 1..={n}")));
            }
            out.insert(id - 1);
        }
    }
    Ok(out)
}
