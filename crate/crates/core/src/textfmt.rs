//! Plain-text sequence files.
//!
//! Exact files hold one decimal integer per line in ascending order. Log-domain
//! files start with a `#logdomain precision=<bits>` header and hold one
//! natural log per line. Anywhere else `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::sequence::{self, build_log_prefix, build_prefix, SequencePrefix};

const LOG_HEADER: &str = "#logdomain";

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
    .trim()
}

fn parse_header(line: &str) -> Option<Result<u32>> {
    let rest = line.trim().strip_prefix(LOG_HEADER)?;
    let bits = rest
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix("precision="))
        .map(|v| {
            v.parse::<u32>().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad precision {v:?}"),
            })
        })
        .unwrap_or(Ok(sequence::DEFAULT_PRECISION));
    Some(bits)
}

/// Parses either text format. `dedup` applies to exact files only.
pub fn parse_sequence(text: &str, dedup: bool) -> Result<SequencePrefix> {
    let mut lines = text.lines().enumerate().skip_while(|(_, l)| l.trim().is_empty());
    let header = lines.clone().next().and_then(|(_, l)| parse_header(l));
    match header {
        Some(bits) => {
            let bits = sequence::check_precision(bits?)?;
            lines.next();
            // parse a little finer than the target so separation checks see the digits
            let parse_bits = (bits + 64).min(sequence::MAX_PRECISION + 64);
            let mut lns = Vec::new();
            for (i, raw) in lines {
                let body = strip_comment(raw);
                if body.is_empty() {
                    continue;
                }
                let v = Float::parse(body).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("{body:?}: {e}"),
                })?;
                lns.push(Float::with_val(parse_bits, v));
            }
            build_log_prefix(lns, bits)
        }
        None => {
            let mut ints = Vec::new();
            for (i, raw) in lines {
                let body = strip_comment(raw);
                if body.is_empty() {
                    continue;
                }
                let v = Integer::from_str_radix(body, 10).map_err(|e| Error::Parse {
                    line: i + 1,
                    msg: format!("{body:?}: {e}"),
                })?;
                ints.push(v);
            }
            build_prefix(ints, dedup)
        }
    }
}

pub fn read_sequence_file(path: &Path, dedup: bool) -> Result<SequencePrefix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let tag = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "file".to_string());
    Ok(parse_sequence(&text, dedup)?.with_tag(tag))
}

/// Decimal digits that round-trip a `bits`-bit mantissa.
pub fn decimal_digits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

pub fn format_sequence(prefix: &SequencePrefix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# family={} length={}", prefix.family_tag(), prefix.len());
    match (prefix.exact_terms(), prefix.log_terms()) {
        (Some(ints), _) => {
            for v in ints {
                let _ = writeln!(out, "{v}");
            }
        }
        (_, Some(lns)) => {
            out.insert_str(
                0,
                &format!("{LOG_HEADER} precision={}\n", prefix.precision_bits()),
            );
            let digits = decimal_digits(prefix.precision_bits());
            for v in lns {
                let _ = writeln!(out, "{}", v.to_string_radix(10, Some(digits)));
            }
        }
        _ => unreachable!(),
    }
    out
}

pub fn write_sequence_file(path: &Path, prefix: &SequencePrefix) -> Result<()> {
    std::fs::write(path, format_sequence(prefix)).map_err(|e| Error::io(path, e))
}
