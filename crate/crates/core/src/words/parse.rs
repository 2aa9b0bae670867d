//! Parser for the word DSL.
//!
//! ```text
//! word := "1" | term (SP term)*
//! term := gen ("^" int)?
//! gen  := "s1" | "s2" | "s3" | "f" | "a" | "b" | "x"
//! int  := ["-"] digit+      (nonzero)
//! SP   := one or more spaces
//! ```

use thiserror::Error;

use super::{Generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { pos: usize, name: String },
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// Parses DSL text into a freely reduced word.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    if text == "1" {
        return Ok(Word::identity());
    }
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    let mut letters = Vec::new();
    let mut pos = 0;
    loop {
        let (gen, exp, next) = parse_term(text, pos)?;
        let l = Letter::new(gen, exp < 0);
        letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
        pos = next;
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b' ' {
            return Err(syntax(pos, "expected space between terms"));
        }
        while pos < bytes.len() && bytes[pos] == b' ' {
            pos += 1;
        }
        if pos == bytes.len() {
            return Err(syntax(pos, "trailing space"));
        }
    }
    Ok(Word::from_letters(letters))
}

fn parse_term(text: &str, start: usize) -> Result<(Generator, i64, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut end = start;
    while end < bytes.len() && bytes[end].is_ascii_alphanumeric() {
        end += 1;
    }
    if end == start {
        return Err(syntax(start, "expected generator"));
    }
    let name = &text[start..end];
    let gen = Generator::from_name(name).ok_or_else(|| ParseError::UnknownGenerator {
        pos: start,
        name: name.to_string(),
    })?;
    if end == bytes.len() || bytes[end] != b'^' {
        return Ok((gen, 1, end));
    }
    let mut p = end + 1;
    let num_start = p;
    if p < bytes.len() && bytes[p] == b'-' {
        p += 1;
    }
    let digits_start = p;
    while p < bytes.len() && bytes[p].is_ascii_digit() {
        p += 1;
    }
    if p == digits_start {
        return Err(syntax(p, "expected integer exponent"));
    }
    let exp: i64 = text[num_start..p]
        .parse()
        .map_err(|_| syntax(num_start, "exponent out of range"))?;
    if exp == 0 {
        return Err(syntax(num_start, "exponent must be nonzero"));
    }
    Ok((gen, exp, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn expands_exponents() {
        let w = parse_word("s1 s2^-1 f^3").unwrap();
        assert_eq!(
            w.letters(),
            &[
                Letter::pos(S1),
                Letter::neg(S2),
                Letter::pos(F),
                Letter::pos(F),
                Letter::pos(F)
            ]
        );
    }

    #[test]
    fn identity_literal() {
        assert!(parse_word("1").unwrap().is_empty());
    }

    #[test]
    fn brieskorn_second_generator() {
        let h = parse_word("s2^-1 s1 s2 s1 f^-3").unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(h.exponent_sum(F), -3);
    }

    #[test]
    fn multiple_spaces_allowed() {
        assert_eq!(parse_word("a   b").unwrap(), parse_word("a b").unwrap());
    }

    #[test]
    fn reduces_on_parse() {
        assert_eq!(parse_word("a b b^-1 a^-1").unwrap(), Word::identity());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_word("s1 y"),
            Err(ParseError::UnknownGenerator {
                pos: 3,
                name: "y".into()
            })
        );
        assert!(matches!(
            parse_word("s1^0"),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_word("s1^"),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_word(""),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_word(" s1"),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_word("s1 "),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_word("s1s2"),
            Err(ParseError::UnknownGenerator { pos: 0, .. })
        ));
        assert!(matches!(
            parse_word("1 s1"),
            Err(ParseError::UnknownGenerator { pos: 0, .. })
        ));
    }
}
