//! Flat `key = value` config files. Entries become `--key=value` arguments
//! placed before the user's own flags, so flags given on the command line
//! win.

use std::fs;
use std::path::Path;

pub fn load(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected key = value", path.display(), i + 1))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        match value {
            "true" => args.push(format!("--{key}")),
            "false" => {}
            _ => args.push(format!("--{key}={value}")),
        }
    }
    Ok(args)
}

/// Pulls `--config FILE` out of `argv` and splices the file's arguments in
/// right after the subcommand name.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut config = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            config = Some(it.next().ok_or("--config needs a file argument")?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            config = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let extra = load(Path::new(&path))?;
    // First positional after the binary name is the subcommand.
    let sub = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|p| p + 2)
        .unwrap_or(rest.len());
    let mut out = rest[..sub].to_vec();
    out.extend(extra);
    out.extend_from_slice(&rest[sub..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splices_after_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.conf");
        fs::write(&p, "# defaults\nshots = 100\nnoise_p = 0.1\nshuffle = true\nquiet = false\n").unwrap();
        let argv = ["lgsound", "--config", p.to_str().unwrap(), "lg-run", "--seed", "3"]
            .map(String::from)
            .to_vec();
        let out = expand(argv).unwrap();
        assert_eq!(
            out,
            ["lgsound", "lg-run", "--shots=100", "--noise-p=0.1", "--shuffle", "--seed", "3"]
        );
    }

    #[test]
    fn bad_line() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.conf");
        fs::write(&p, "shots 100\n").unwrap();
        assert!(load(&p).is_err());
    }
}
