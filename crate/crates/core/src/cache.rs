//! Persistent memo cache for divisor evaluations. One entry per line:
//! `SPACE g n<TAB>monomial<TAB>p/q`, after a version header.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::arith::{format_rational, parse_rational};
use crate::divisor::Space;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::expr::parse_monomial;

pub const HEADER: &str = "# mgbar-cache v1";

/// Writes every memoized divisor value, sorted so equal caches give equal files.
pub fn write_cache(engine: &Engine, mut out: impl Write) -> std::io::Result<usize> {
    let mut lines: Vec<(Space, String, String)> = engine
        .divisor_memo
        .snapshot()
        .into_iter()
        .map(|(m, v)| (m.space(), m.to_string(), format_rational(&v)))
        .collect();
    lines.sort();
    writeln!(out, "{HEADER}")?;
    for (s, m, v) in &lines {
        writeln!(out, "SPACE {} {}\t{m}\t{v}", s.g, s.n)?;
    }
    Ok(lines.len())
}

/// Loads entries into the engine's memo; returns how many were read.
pub fn read_cache(engine: &Engine, input: impl BufRead) -> Result<usize> {
    let mut count = 0;
    let mut seen_header = false;
    for (i, line) in input.lines().enumerate() {
        let lineno = i + 1;
        let err = |message: String| Error::Cache { line: lineno, message };
        let line = line.map_err(|e| err(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        if !seen_header {
            if line.trim() != HEADER {
                return Err(err(format!("expected header '{HEADER}'")));
            }
            seen_header = true;
            continue;
        }
        let mut parts = line.split('\t');
        let (Some(space), Some(mono), Some(value), None) =
            (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(err("expected three tab-separated fields".into()));
        };
        let nums: Vec<&str> = space.split_whitespace().collect();
        let space = match nums.as_slice() {
            ["SPACE", g, n] => {
                let g = g.parse().map_err(|_| err(format!("bad genus '{g}'")))?;
                let n = n.parse().map_err(|_| err(format!("bad point count '{n}'")))?;
                Space::new(g, n).map_err(|e| err(e.to_string()))?
            }
            _ => return Err(err("expected 'SPACE g n'".into())),
        };
        let m = parse_monomial(space, mono, 0).map_err(|e| err(e.to_string()))?;
        let v = parse_rational(value).ok_or_else(|| err(format!("bad value '{value}'")))?;
        if m.degree() != space.dim() {
            return Err(err(format!("monomial degree {} does not match {space}", m.degree())));
        }
        engine.divisor_memo.insert(m.canonicalize(), v);
        count += 1;
    }
    Ok(count)
}

/// Loads a cache file; a missing file is an empty cache.
pub fn load(engine: &Engine, path: &Path) -> Result<usize> {
    match fs::File::open(path) {
        Ok(f) => read_cache(engine, BufReader::new(f)),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(0),
        Err(e) => Err(Error::Cache { line: 0, message: e.to_string() }),
    }
}

/// Saves through a temporary file in the same directory, then renames.
pub fn save(engine: &Engine, path: &Path) -> Result<usize> {
    let io = |e: std::io::Error| Error::Cache { line: 0, message: e.to_string() };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    let mut f = std::io::BufWriter::new(fs::File::create(&tmp).map_err(io)?);
    let n = write_cache(engine, &mut f).map_err(io)?;
    f.flush().map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io)?;
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn round_trip() {
        let e = Engine::new();
        let m = parse("M(3,0): d_irr^2 * ka1^3 * d1").unwrap().into_monomial();
        let v = e.evaluate(&m);
        let mut buf = Vec::new();
        let n = write_cache(&e, &mut buf).unwrap();
        assert!(n > 0);
        let warm = Engine::new();
        assert_eq!(read_cache(&warm, &buf[..]).unwrap(), n);
        assert_eq!(warm.memo_sizes()[3], n);
        assert_eq!(warm.evaluate(&m), v);
        let mut again = Vec::new();
        write_cache(&warm, &mut again).unwrap();
        assert_eq!(buf, again);
    }

    #[test]
    fn rejects_garbage() {
        let e = Engine::new();
        assert!(matches!(read_cache(&e, &b"nope\n"[..]), Err(Error::Cache { line: 1, .. })));
        let text = format!("{HEADER}\nSPACE 2 0\tka1^3\n");
        assert!(matches!(read_cache(&e, text.as_bytes()), Err(Error::Cache { line: 2, .. })));
        let text = format!("{HEADER}\nSPACE 2 0\tka1^2\t1/2\n");
        assert!(matches!(read_cache(&e, text.as_bytes()), Err(Error::Cache { line: 2, .. })));
    }
}
