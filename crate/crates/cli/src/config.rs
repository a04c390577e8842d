//! `--config` files: `key=value` lines spliced into the argument list.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

const GLOBAL_KEYS: [&str; 2] = ["format", "output"];
const VALUED_GLOBALS: [&str; 3] = ["--format", "--output", "--config"];

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key=value", idx + 1);
        };
        let key = key.trim().trim_start_matches('-');
        if key.is_empty() {
            bail!("config line {}: empty key", idx + 1);
        }
        if key == "config" {
            bail!(
                "config line {}: nested config files are not supported",
                idx + 1
            );
        }
        entries.push((key.to_string(), value.trim().to_string()));
    }
    Ok(entries)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut iter = args.iter().skip(1);
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = s.strip_prefix("--config=") {
            return Some(path.into());
        }
    }
    None
}

fn subcommand_index(args: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < args.len() {
        let s = args[i].to_string_lossy();
        if VALUED_GLOBALS.contains(&s.as_ref()) {
            i += 2;
        } else if s.starts_with('-') {
            i += 1;
        } else {
            return Some(i);
        }
    }
    None
}

/// Global keys go right after the program name and command keys right after
/// the subcommand, so anything the user typed comes later and takes effect.
pub fn splice(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config {}", path.to_string_lossy()))?;
    let entries = parse_config(&text)?;
    let flag = |(k, v): &(String, String)| OsString::from(format!("--{k}={v}"));
    let globals: Vec<OsString> = entries
        .iter()
        .filter(|e| GLOBAL_KEYS.contains(&e.0.as_str()))
        .map(flag)
        .collect();
    let locals: Vec<OsString> = entries
        .iter()
        .filter(|e| !GLOBAL_KEYS.contains(&e.0.as_str()))
        .map(flag)
        .collect();

    let Some(sub) = subcommand_index(&args) else {
        return Ok(args);
    };
    let mut out = Vec::with_capacity(args.len() + entries.len());
    out.push(args[0].clone());
    out.extend(globals);
    out.extend_from_slice(&args[1..=sub]);
    out.extend(locals);
    out.extend_from_slice(&args[sub + 1..]);
    Ok(out)
}
