//! Parsing of command-line inputs: code triples, hex words and posterior files.

use anyhow::{bail, Context, Result};
use ratdec_core::{CodeParams, Gf, PosteriorMatrix};

/// `m,n,k` with n = 2^m - 1.
pub fn parse_code(s: &str) -> Result<CodeParams> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [m, n, k] = parts.as_slice() else {
        bail!("--code expects m,n,k, got {s:?}");
    };
    let m: u32 = m.parse().with_context(|| format!("bad m {m:?}"))?;
    let n: usize = n.parse().with_context(|| format!("bad n {n:?}"))?;
    let k: usize = k.parse().with_context(|| format!("bad k {k:?}"))?;
    let params = CodeParams::standard(m, k).with_context(|| format!("invalid code ({m},{n},{k})"))?;
    if params.n() != n {
        bail!("n must be 2^m - 1 = {} for m = {m}", params.n());
    }
    Ok(params)
}

/// A word as hex symbols. Symbols may be separated by spaces, commas or
/// colons; without separators each symbol takes ceil(m/4) digits.
pub fn parse_word(s: &str, params: &CodeParams) -> Result<Vec<Gf>> {
    let m = params.field().m();
    let width = m.div_ceil(4) as usize;
    let s = s.trim().trim_start_matches("0x");
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    if s.contains([' ', ',', ':']) {
        let mut start = 0;
        for piece in s.split([' ', ',', ':']) {
            if !piece.is_empty() {
                tokens.push((start, piece));
            }
            start += piece.len() + 1;
        }
    } else {
        if !s.len().is_multiple_of(width) {
            bail!("word has {} hex digits, not a multiple of {width} digits per symbol", s.len());
        }
        tokens = (0..s.len()).step_by(width).map(|i| (i, &s[i..i + width])).collect();
    }
    let q = params.field().size() as u32;
    let word: Vec<Gf> = tokens
        .iter()
        .enumerate()
        .map(|(sym, &(pos, tok))| {
            let v = u32::from_str_radix(tok, 16)
                .map_err(|_| anyhow::anyhow!("symbol {} ({tok:?}) at character {} is not hex", sym + 1, pos + 1))?;
            if v >= q {
                bail!("symbol {} ({tok:?}) at character {} exceeds the field size {q}", sym + 1, pos + 1);
            }
            Ok(Gf(v as u16))
        })
        .collect::<Result<_>>()?;
    if word.len() != params.n() {
        bail!("word has {} symbols, code length is {}", word.len(), params.n());
    }
    Ok(word)
}

pub fn format_word(word: &[Gf], params: &CodeParams) -> String {
    let width = params.field().m().div_ceil(4) as usize;
    word.iter().map(|g| format!("{:0width$x}", g.0)).collect()
}

/// One row per position 1..n, each with the n error-value probabilities in
/// column order α^(-1), ..., α^(-n). Blank lines and `#` comments are skipped.
pub fn parse_pi(text: &str, params: &CodeParams) -> Result<PosteriorMatrix> {
    let n = params.n();
    let mut rows = Vec::with_capacity(n);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .enumerate()
            .map(|(col, t)| {
                t.parse::<f64>()
                    .map_err(|_| anyhow::anyhow!("line {}, column {}: {t:?} is not a number", lineno + 1, col + 1))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            bail!("line {}: expected {n} probabilities, got {}", lineno + 1, row.len());
        }
        rows.push(row);
    }
    PosteriorMatrix::from_rows(n, rows).context("invalid posterior matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs159() -> CodeParams {
        CodeParams::standard(4, 9).unwrap()
    }

    #[test]
    fn code_triples() {
        assert_eq!(parse_code("4,15,9").unwrap().k(), 9);
        assert!(parse_code("4,14,9").is_err());
        assert!(parse_code("4,15").is_err());
    }

    #[test]
    fn words() {
        let p = rs159();
        let w = parse_word("0123456789abcde", &p).unwrap();
        assert_eq!(w[10], Gf(10));
        assert_eq!(format_word(&w, &p), "0123456789abcde");
        let spaced = parse_word("0 1 2 3 4 5 6 7 8 9 a b c d e", &p).unwrap();
        assert_eq!(spaced, w);
        let err = parse_word("0123456789abcdg", &p).unwrap_err().to_string();
        assert!(err.contains("symbol 15") && err.contains("character 15"), "{err}");
        assert!(parse_word("0123", &p).is_err());
        let wide = CodeParams::standard(8, 200).unwrap();
        let hexw: String = (0..255).map(|i| format!("{i:02x}")).collect();
        assert_eq!(parse_word(&hexw, &wide).unwrap()[255 - 1], Gf(254));
    }

    #[test]
    fn pi_files() {
        let p = rs159();
        let row = vec!["0.01"; 15].join(" ");
        let text = format!("# posterior\n{}\n", vec![row.as_str(); 15].join("\n"));
        let pi = parse_pi(&text, &p).unwrap();
        assert!((pi.hard(3) - 0.85).abs() < 1e-12);
        assert!(parse_pi(&vec![row.as_str(); 14].join("\n"), &p).is_err());
        let bad = text.replacen("0.01", "x", 1);
        assert!(parse_pi(&bad, &p).unwrap_err().to_string().contains("line 2, column 1"));
    }
}
