//! Words over the generators `X`, `Y`, `e`.
//!
//! ```text
//! word := term*
//! term := gen exp?
//! gen  := 'X' | 'Y' | 'e'
//! exp  := '^' '-'? digits
//! ```
//!
//! Terms may be separated by whitespace or written adjacently; no whitespace
//! is allowed inside a term.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X,
    Y,
    E,
}

impl Generator {
    pub fn symbol(self) -> char {
        match self {
            Generator::X => 'X',
            Generator::Y => 'Y',
            Generator::E => 'e',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub gen: Generator,
    pub exp: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    tokens: Vec<Token>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("e is not invertible (negative exponent at byte {pos})")]
    NonInvertibleGenerator { pos: usize },
    #[error("zero exponent at byte {pos}")]
    ZeroExponent { pos: usize },
}

impl Word {
    pub fn new(tokens: Vec<Token>) -> Result<Self, WordError> {
        for t in &tokens {
            if t.exp == 0 {
                return Err(WordError::ZeroExponent { pos: 0 });
            }
            if t.gen == Generator::E && t.exp < 0 {
                return Err(WordError::NonInvertibleGenerator { pos: 0 });
            }
        }
        Ok(Word { tokens })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Appends `g^exp`, skipping zero exponents.
    pub fn push(&mut self, gen: Generator, exp: i64) {
        if exp != 0 {
            assert!(gen != Generator::E || exp > 0, "e has no inverse");
            self.tokens.push(Token { gen, exp });
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Word { tokens }
    }

    /// The reversed word, i.e. the image under the anti-involution fixing
    /// every generator.
    pub fn reversed(&self) -> Word {
        Word { tokens: self.tokens.iter().rev().copied().collect() }
    }

    /// Each `g^n` replaced by `|n|` copies of `g^{±1}`.
    pub fn expanded(&self) -> Word {
        let tokens = self
            .tokens
            .iter()
            .flat_map(|t| std::iter::repeat_n(Token { gen: t.gen, exp: t.exp.signum() }, t.exp.unsigned_abs() as usize))
            .collect();
        Word { tokens }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

pub fn format_word(w: &Word) -> String {
    let parts: Vec<String> = w
        .tokens
        .iter()
        .map(|t| if t.exp == 1 { t.gen.symbol().to_string() } else { format!("{}^{}", t.gen.symbol(), t.exp) })
        .collect();
    parts.join(" ")
}

pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut tokens = Vec::new();
    let syntax = |pos: usize, message: &str| WordError::Syntax { pos, message: message.to_string() };
    loop {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos == bytes.len() {
            break;
        }
        let gen = match bytes[pos] {
            b'X' => Generator::X,
            b'Y' => Generator::Y,
            b'e' => Generator::E,
            _ => return Err(syntax(pos, "expected X, Y or e")),
        };
        pos += 1;
        let mut exp = 1;
        if bytes.get(pos) == Some(&b'^') {
            let exp_pos = pos;
            pos += 1;
            let negative = bytes.get(pos) == Some(&b'-');
            if negative {
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if start == pos {
                return Err(syntax(pos, "expected exponent digits"));
            }
            let magnitude: i64 = text[start..pos].parse().map_err(|_| syntax(start, "exponent too large"))?;
            exp = if negative { -magnitude } else { magnitude };
            if exp == 0 {
                return Err(WordError::ZeroExponent { pos: exp_pos });
            }
            if gen == Generator::E && exp < 0 {
                return Err(WordError::NonInvertibleGenerator { pos: exp_pos });
            }
        }
        tokens.push(Token { gen, exp });
    }
    Ok(Word { tokens })
}
