//! Flag defaults from a plain `key=value` file.
//!
//! Keys are long flag names without the dashes. A value is appended to the
//! command line only when the selected subcommand accepts that flag and the
//! user did not pass it explicitly, so explicit flags always win.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use clap::CommandFactory;

use crate::args::Cli;
use crate::error::CliError;

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Usage(format!("config line {}: expected key=value", lineno + 1)));
        };
        let key = k.trim().trim_start_matches("--").to_owned();
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", lineno + 1)));
        }
        out.insert(key, v.trim().to_owned());
    }
    Ok(out)
}

/// Location of `--config` on the raw command line, if any.
fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

fn given(args: &[OsString], flag: &str) -> bool {
    let long = format!("--{flag}");
    let eq = format!("--{flag}=");
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == long || s.starts_with(&eq)
    })
}

/// Long flags accepted after the given subcommand, including global ones.
fn accepted_flags(sub: &str) -> Vec<(String, bool)> {
    let cmd = Cli::command();
    let mut flags: Vec<(String, bool)> = Vec::new();
    let mut collect = |c: &clap::Command| {
        for arg in c.get_arguments() {
            if let Some(l) = arg.get_long() {
                let takes_value = arg.get_action().takes_values();
                flags.push((l.to_owned(), takes_value));
            }
        }
    };
    collect(&cmd);
    if let Some(s) = cmd.find_subcommand(sub) {
        collect(s);
    }
    flags
}

/// Raw arguments with config defaults merged in.
pub fn merge_config(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))?;
    let defaults = parse_config(&text)?;
    let cmd = Cli::command();
    let sub = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).find(|a| {
        cmd.get_subcommands().any(|s| s.get_name() == a)
    });
    let Some(sub) = sub else {
        return Ok(args);
    };
    let accepted = accepted_flags(&sub);
    let mut merged = args.clone();
    for (key, value) in defaults {
        if key == "config" || given(&args, &key) {
            continue;
        }
        let Some((_, takes_value)) = accepted.iter().find(|(l, _)| *l == key) else {
            continue;
        };
        if *takes_value {
            merged.push(format!("--{key}={value}").into());
        } else if matches!(value.as_str(), "true" | "1" | "yes") {
            merged.push(format!("--{key}").into());
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_key_values() {
        let c = parse_config("# defaults\nalpha = 0.5\n--beta=1.5\n\nformat=json\n").unwrap();
        assert_eq!(c["alpha"], "0.5");
        assert_eq!(c["beta"], "1.5");
        assert_eq!(c["format"], "json");
        assert!(parse_config("alpha 0.5").is_err());
    }

    #[test]
    fn accepted_flags_include_globals() {
        let f = accepted_flags("sum");
        assert!(f.iter().any(|(l, v)| l == "delta" && *v));
        assert!(f.iter().any(|(l, _)| l == "format"));
        assert!(!f.iter().any(|(l, _)| l == "curves"));
    }
}
