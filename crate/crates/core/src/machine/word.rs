use super::Alphabet;

/// An input string as a sequence of alphabet tokens.
pub type Word = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TokenizeError {
    #[error("no alphabet symbol matches at byte {offset} of {text:?}")]
    UnknownSymbol { text: String, offset: usize },
    #[error("repetition '^' at byte {offset} has no preceding symbol")]
    DanglingRepeat { offset: usize },
    #[error("repetition count at byte {offset} is not a number")]
    BadCount { offset: usize },
}

/// Splits `text` into alphabet tokens by greedy longest match.
///
/// Whitespace is ignored, `ε` denotes the empty word, and `x^n` repeats the
/// preceding token `n` times (`a^8`, `a0^3`).
pub fn tokenize(text: &str, alphabet: &Alphabet) -> Result<Word, TokenizeError> {
    let mut out: Word = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < text.len() {
        let rest = &text[i..];
        let c = rest.chars().next().expect("non-empty");
        if c.is_whitespace() || c == 'ε' {
            i += c.len_utf8();
            continue;
        }
        if c == '^' {
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let count: usize = text[start..end].parse().map_err(|_| TokenizeError::BadCount { offset: i })?;
            let last = out.pop().ok_or(TokenizeError::DanglingRepeat { offset: i })?;
            out.extend(std::iter::repeat_n(last, count));
            i = end;
            continue;
        }
        let best = alphabet
            .symbols()
            .iter()
            .filter(|s| !s.is_empty() && rest.starts_with(s.as_str()))
            .max_by_key(|s| s.len());
        match best {
            Some(sym) => {
                out.push(sym.clone());
                i += sym.len();
            }
            None => return Err(TokenizeError::UnknownSymbol { text: text.to_string(), offset: i }),
        }
    }
    Ok(out)
}

/// Renders a word, compressing runs of three or more equal tokens as `x^n`.
pub fn render_word<S: AsRef<str>>(word: &[S]) -> String {
    if word.is_empty() {
        return "ε".to_string();
    }
    let mut out = String::new();
    let mut i = 0;
    while i < word.len() {
        let tok = word[i].as_ref();
        let mut j = i;
        while j < word.len() && word[j].as_ref() == tok {
            j += 1;
        }
        let run = j - i;
        if run >= 3 {
            out.push_str(tok);
            out.push('^');
            out.push_str(&run.to_string());
        } else {
            for _ in 0..run {
                out.push_str(tok);
            }
        }
        i = j;
    }
    out
}
