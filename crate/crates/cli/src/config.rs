//! Flat `key=value` config files. Each line becomes `--key=value` and is
//! placed before the command-line flags, so the command line wins.

use std::ffi::OsString;
use std::fs;

pub fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(format!("config line {}: expected key=value", i + 1));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.starts_with('-') || k == "config" {
            return Err(format!("config line {}: bad key {k:?}", i + 1));
        }
        out.push(format!("--{k}={v}"));
    }
    Ok(out)
}

/// Finds `--config PATH` (or `--config=PATH`), removes it and splices the
/// file's flags in right after the subcommand name.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        match a.to_str() {
            Some("--config") => {
                let p = it.next().ok_or("--config needs a path")?;
                path = Some(p);
            }
            Some(s) if s.starts_with("--config=") => path = Some(OsString::from(&s["--config=".len()..])),
            _ => rest.push(a),
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("config {}: {e}", path.to_string_lossy()))?;
    let extra = parse(&text)?;
    // program name, then the subcommand (first argument not starting with '-')
    let sub = rest
        .iter()
        .skip(1)
        .position(|a| !a.to_string_lossy().starts_with('-'))
        .map(|i| i + 2)
        .unwrap_or(rest.len());
    let tail = rest.split_off(sub.min(rest.len()));
    rest.extend(extra.into_iter().map(OsString::from));
    rest.extend(tail);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(xs: &[&str]) -> Vec<OsString> {
        xs.iter().map(OsString::from).collect()
    }

    #[test]
    fn lines() {
        let v = parse("# defaults\nsteps = 9\n\nrec=jrec\n").unwrap();
        assert_eq!(v, vec!["--steps=9", "--rec=jrec"]);
        assert!(parse("steps").is_err());
    }

    #[test]
    fn splice_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        fs::write(&p, "steps=3\n").unwrap();
        let args = os(&["recur", "iterate", "--config", p.to_str().unwrap(), "--steps", "5"]);
        let out = expand(args).unwrap();
        assert_eq!(out, os(&["recur", "iterate", "--steps=3", "--steps", "5"]));
    }
}
