//! Simulation-free membership predicates and member generators.

use std::fmt;
use std::str::FromStr;

use crate::machine::{Word, KAPPA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LanguageId {
    /// Unary lengths 8, 14, 28, 62, …
    Ld,
    /// a^m b^M with lcm(1..m) dividing M.
    Gcm,
    /// a^j b^k with j ≠ k.
    Jk,
    /// κ-padded strings whose κ-free image is in `Jk`. This is only a
    /// necessary condition; κ placement is defined by the padded machine.
    JkPadded,
    /// a-delimited blocks (0)₂ (1)₂ʳ (2)₂ (3)₂ʳ … (2k)₂ (2k+1)₂ʳ, k ≥ 1.
    Erb,
    /// The nested ladder language over a0 … a(j−1), j ≥ 2.
    Lj(usize),
}

impl LanguageId {
    pub fn is_member<S: AsRef<str>>(&self, w: &[S]) -> bool {
        match *self {
            LanguageId::Ld => w.iter().all(|s| s.as_ref() == "a") && is_ld_length(w.len()),
            LanguageId::Gcm => is_member_gcm(w),
            LanguageId::Jk => is_member_jk(w),
            LanguageId::JkPadded => is_member_jk(&h_kappa(w)),
            LanguageId::Erb => is_member_erb(w),
            LanguageId::Lj(j) => is_member_lj(j, w),
        }
    }

    /// Input alphabet of the language (κ included for the padded one).
    pub fn alphabet(&self) -> Vec<String> {
        let v: Vec<&str> = match self {
            LanguageId::Ld => vec!["a"],
            LanguageId::Gcm | LanguageId::Jk => vec!["a", "b"],
            LanguageId::JkPadded => vec!["a", "b", KAPPA],
            LanguageId::Erb => vec!["a", "0", "1"],
            LanguageId::Lj(j) => return lj_alphabet(*j),
        };
        v.into_iter().map(String::from).collect()
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LanguageId::Ld => f.write_str("ld"),
            LanguageId::Gcm => f.write_str("gcm"),
            LanguageId::Jk => f.write_str("jk"),
            LanguageId::JkPadded => f.write_str("jk-padded"),
            LanguageId::Erb => f.write_str("erb"),
            LanguageId::Lj(j) => write!(f, "lj{j}"),
        }
    }
}

impl FromStr for LanguageId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ld" => Ok(LanguageId::Ld),
            "gcm" => Ok(LanguageId::Gcm),
            "jk" => Ok(LanguageId::Jk),
            "jk-padded" => Ok(LanguageId::JkPadded),
            "erb" => Ok(LanguageId::Erb),
            _ => match s.strip_prefix("lj").and_then(|j| j.parse::<usize>().ok()) {
                Some(j) if j >= 2 => Ok(LanguageId::Lj(j)),
                _ => Err(format!("unknown language {s:?} (ld, gcm, jk, jk-padded, erb, lj<j> with j ≥ 2)")),
            },
        }
    }
}

/// Member lengths of the unary language up to `limit`:
/// k₀ = 8, kᵢ = kᵢ₋₁ + 2ⁱ(i+1) + 2.
pub fn ld_members_up_to(limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k: usize = 8;
    let mut i: u32 = 1;
    while k <= limit {
        out.push(k);
        let Some(gap) = 1usize.checked_shl(i).and_then(|p| p.checked_mul(i as usize + 1)) else { break };
        let Some(next) = k.checked_add(gap + 2) else { break };
        k = next;
        i += 1;
    }
    out
}

fn is_ld_length(n: usize) -> bool {
    ld_members_up_to(n).last() == Some(&n)
}

/// Splits `w` as x^p y^q; `None` if it has any other shape.
fn split_two<S: AsRef<str>>(w: &[S], x: &str, y: &str) -> Option<(usize, usize)> {
    let p = w.iter().take_while(|s| s.as_ref() == x).count();
    let rest = &w[p..];
    rest.iter().all(|s| s.as_ref() == y).then_some((p, rest.len()))
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_member_gcm<S: AsRef<str>>(w: &[S]) -> bool {
    let Some((m, big_m)) = split_two(w, "a", "b") else { return false };
    if big_m == 0 {
        return true;
    }
    let big_m = big_m as u128;
    let mut l: u128 = 1;
    for i in 1..=m as u128 {
        l = l / gcd(l, i) * i;
        if l > big_m {
            return false;
        }
    }
    big_m.is_multiple_of(l)
}

pub fn is_member_jk<S: AsRef<str>>(w: &[S]) -> bool {
    matches!(split_two(w, "a", "b"), Some((j, k)) if j != k)
}

/// Smallest l > 1 with r ≢ s (mod l); `None` iff r = s.
pub fn least_distinguishing_modulus(r: u64, s: u64) -> Option<u64> {
    if r == s {
        return None;
    }
    (2..).find(|l| r % l != s % l)
}

/// Erases every κ.
pub fn h_kappa<S: AsRef<str>>(w: &[S]) -> Word {
    w.iter().map(|s| s.as_ref()).filter(|s| *s != KAPPA).map(String::from).collect()
}

fn binary(i: usize) -> String {
    format!("{i:b}")
}

pub fn is_member_erb<S: AsRef<str>>(w: &[S]) -> bool {
    let mut text = String::with_capacity(w.len());
    for s in w {
        match s.as_ref() {
            t @ ("a" | "0" | "1") => text.push_str(t),
            _ => return false,
        }
    }
    let Some(body) = text.strip_prefix('a') else { return false };
    let blocks: Vec<&str> = body.split('a').collect();
    if blocks.len() < 4 || !blocks.len().is_multiple_of(2) {
        return false;
    }
    blocks.iter().enumerate().all(|(i, b)| {
        let fwd = binary(i);
        if i % 2 == 0 {
            *b == fwd
        } else {
            b.chars().eq(fwd.chars().rev())
        }
    })
}

/// The member with blocks 0 … 2k+1 (k ≥ 1).
pub fn erb_member(k: usize) -> Word {
    assert!(k >= 1, "members need k ≥ 1");
    let mut out = Word::new();
    for i in 0..=2 * k + 1 {
        out.push("a".into());
        let b = binary(i);
        if i % 2 == 0 {
            out.extend(b.chars().map(String::from));
        } else {
            out.extend(b.chars().rev().map(String::from));
        }
    }
    out
}

pub fn lj_alphabet(j: usize) -> Vec<String> {
    (0..j).map(|i| format!("a{i}")).collect()
}

/// w_{j,k}: for j = 2 the ladder a1 a0 a1 a0² … a1 a0ᵏ; for larger j the
/// blocks a_{j−1} w_{j−1,i} for i = 1 … k.
pub fn lj_member(j: usize, k: usize) -> Word {
    assert!(j >= 2 && k >= 1);
    let mut out = Word::new();
    push_lj(j, k, &mut out);
    out
}

fn push_lj(j: usize, k: usize, out: &mut Word) {
    for i in 1..=k {
        out.push(format!("a{}", j - 1));
        if j == 2 {
            out.extend(std::iter::repeat_n("a0".to_string(), i));
        } else {
            push_lj(j - 1, i, out);
        }
    }
}

/// |w_{j,k}|.
pub fn lj_len(j: usize, k: usize) -> usize {
    (1..=k).map(|i| 1 + if j == 2 { i } else { lj_len(j - 1, i) }).sum()
}

pub fn is_member_lj<S: AsRef<str>>(j: usize, w: &[S]) -> bool {
    if j < 2 {
        return false;
    }
    let mut syms = Vec::with_capacity(w.len());
    for s in w {
        match s.as_ref().strip_prefix('a').and_then(|d| d.parse::<usize>().ok()) {
            Some(d) if d < j && s.as_ref() == format!("a{d}") => syms.push(d),
            _ => return false,
        }
    }
    lj_index(j, &syms).is_some()
}

/// k such that `w` = w_{j,k}.
fn lj_index(j: usize, w: &[usize]) -> Option<usize> {
    let delim = j - 1;
    if w.first() != Some(&delim) {
        return None;
    }
    let mut k = 0;
    for piece in w[1..].split(|&d| d == delim) {
        k += 1;
        let ok = if j == 2 {
            piece.len() == k && piece.iter().all(|&d| d == 0)
        } else {
            lj_index(j - 1, piece) == Some(k)
        };
        if !ok {
            return None;
        }
    }
    Some(k)
}
