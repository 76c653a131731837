//! Flat `key = value` configuration files.
//!
//! Each non-empty line that does not start with `#` sets one long flag of
//! the chosen subcommand, for example
//!
//! ```text
//! # residue demo
//! z = 31
//! level = 10000
//! format = json
//! ```
//!
//! A value of `true` sets a boolean flag and `false` leaves it unset. Config
//! entries are spliced in front of the command-line flags, so a flag given
//! on the command line always wins.

use std::fs;
use std::path::Path;

use crate::Failure;

pub fn parse(text: &str) -> Result<Vec<(String, String)>, Failure> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Failure::Usage(format!("config line {}: expected key = value", i + 1))
        })?;
        let key = k.trim().trim_start_matches("--");
        if key.is_empty() || key == "config" {
            return Err(Failure::Usage(format!(
                "config line {}: invalid key {:?}",
                i + 1,
                k.trim()
            )));
        }
        out.push((key.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

/// Inserts the flags from `--config PATH` (if any) right after the
/// subcommand name.
pub fn expand(args: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, Failure> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| Failure::Usage(format!("cannot read config {path}: {e}")))?;
    let mut injected = Vec::new();
    for (k, v) in parse(&text)? {
        match v.as_str() {
            "true" => injected.push(format!("--{k}")),
            "false" => {}
            _ => {
                injected.push(format!("--{k}"));
                injected.push(v);
            }
        }
    }
    let at = args
        .iter()
        .position(|a| subcommands.contains(&a.as_str()))
        .map(|i| i + 1)
        .ok_or_else(|| Failure::Usage("--config needs a subcommand".into()))?;
    let mut out = args[..at].to_vec();
    out.extend(injected);
    out.extend_from_slice(&args[at..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let kv = parse("# demo\n z = 31\n\nlevel=10000\n").unwrap();
        assert_eq!(
            kv,
            vec![("z".into(), "31".into()), ("level".into(), "10000".into())]
        );
        assert!(parse("z 31").is_err());
        assert!(parse("config = other").is_err());
    }
}
