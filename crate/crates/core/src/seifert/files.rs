//! Line-oriented `key=value` input files.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{SeifertError, SeifertPresentation};
use crate::orbifold::BaseOrbifold;
use crate::words::{parse_word, GeneratingPair, Word};

fn parse_lines<'a>(
    text: &'a str,
    allowed: &[&str],
) -> Result<HashMap<&'a str, (usize, &'a str)>, SeifertError> {
    let mut out = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let n = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(SeifertError::Parse {
                line: n,
                msg: format!("expected key=value, got `{line}`"),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if !allowed.contains(&key) {
            return Err(SeifertError::Parse {
                line: n,
                msg: format!("unknown key `{key}`"),
            });
        }
        if out.insert(key, (n, value)).is_some() {
            return Err(SeifertError::Parse {
                line: n,
                msg: format!("duplicate key `{key}`"),
            });
        }
    }
    Ok(out)
}

fn int(line: usize, key: &str, v: &str) -> Result<i64, SeifertError> {
    v.parse().map_err(|_| SeifertError::Parse {
        line,
        msg: format!("`{key}` is not an integer: `{v}`"),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub base: BaseOrbifold,
    pub e1: i64,
    pub e2: i64,
    pub fiber_exp: i64,
    pub eta: Option<i64>,
}

impl PresentationFile {
    pub fn build(&self) -> Result<SeifertPresentation, SeifertError> {
        SeifertPresentation::new(self.base, self.e1, self.e2, self.fiber_exp)
    }
}

/// Keys `base`, `e1`, `e2`, `fiberExp`, optional `eta`. A missing `e2` is
/// taken from `eta`; giving both with different values is an error.
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile, SeifertError> {
    let kv = parse_lines(text, &["base", "e1", "e2", "fiberExp", "eta"])?;
    let last = text.lines().count().max(1);
    let get = |key: &str| kv.get(key).copied();
    let need = |key: &str| {
        get(key).ok_or_else(|| SeifertError::Parse {
            line: last,
            msg: format!("missing key `{key}`"),
        })
    };
    let (bl, bv) = need("base")?;
    let base: BaseOrbifold = bv.parse().map_err(|e| SeifertError::Parse {
        line: bl,
        msg: format!("{e}"),
    })?;
    let (l1, v1) = need("e1")?;
    let e1 = int(l1, "e1", v1)?;
    let (lq, vq) = need("fiberExp")?;
    let fiber_exp = int(lq, "fiberExp", vq)?;
    let eta = get("eta").map(|(l, v)| int(l, "eta", v)).transpose()?;
    let e2 = match (get("e2"), eta) {
        (Some((l, v)), eta) => {
            let e2 = int(l, "e2", v)?;
            if eta.is_some_and(|x| x != e2) {
                return Err(SeifertError::Parse {
                    line: l,
                    msg: format!("e2={e2} conflicts with eta={}", eta.unwrap()),
                });
            }
            e2
        }
        (None, Some(eta)) => eta,
        (None, None) => need("e2").map(|_| 0)?,
    };
    Ok(PresentationFile {
        base,
        e1,
        e2,
        fiber_exp,
        eta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub pair: GeneratingPair,
    pub witness: Option<Word>,
}

/// Keys `g`, `h`, optional `witness`, each a word.
pub fn parse_pair_file(text: &str) -> Result<PairFile, SeifertError> {
    let kv = parse_lines(text, &["g", "h", "witness"])?;
    let last = text.lines().count().max(1);
    let word = |key: &str| -> Result<Option<Word>, SeifertError> {
        kv.get(key)
            .map(|&(l, v)| {
                parse_word(v).map_err(|e| SeifertError::Parse {
                    line: l,
                    msg: format!("`{key}`: {e}"),
                })
            })
            .transpose()
    };
    let missing = |key: &str| SeifertError::Parse {
        line: last,
        msg: format!("missing key `{key}`"),
    };
    let g = word("g")?.ok_or_else(|| missing("g"))?;
    let h = word("h")?.ok_or_else(|| missing("h"))?;
    Ok(PairFile {
        pair: GeneratingPair::new(g, h),
        witness: word("witness")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_file() {
        let p =
            parse_presentation_file("# sigma\nbase=S2(2,3,7)\ne1=1\ne2=1\nfiberExp=6\n").unwrap();
        assert_eq!(p.fiber_exp, 6);
        assert_eq!(p.base, BaseOrbifold::Triangle { p: 2, q: 3, r: 7 });
        let p = parse_presentation_file("base=S2(3,3,4)\ne1=1\neta=-1\nfiberExp=2").unwrap();
        assert_eq!(p.e2, -1);
        assert!(parse_presentation_file("base=S2(3,3,4)\ne1=1\ne2=1\neta=-1\nfiberExp=2").is_err());
        assert!(parse_presentation_file("base=S2(2,3,7)\ne1=1\ne2=1").is_err());
        assert!(parse_presentation_file("base=S2(2,3,7)\nE1=1").is_err());
        let err = parse_presentation_file("base=S2(2,3,7)\ne1=x").unwrap_err();
        assert!(matches!(err, SeifertError::Parse { line: 2, .. }));
    }

    #[test]
    fn pair_file() {
        let p = parse_pair_file("g=s1 s2^-1\nh=s2^-1 s1\nwitness=s2 s1 s2^-1\n").unwrap();
        assert_eq!(p.pair.first.to_string(), "s1 s2^-1");
        assert_eq!(p.witness.unwrap().to_string(), "s2 s1 s2^-1");
        assert!(parse_pair_file("g=s1\n").is_err());
        assert!(parse_pair_file("g=s1\nh=q\n").is_err());
        assert!(parse_pair_file("g=s1\nh=s2\ng=s2\n").is_err());
    }
}
