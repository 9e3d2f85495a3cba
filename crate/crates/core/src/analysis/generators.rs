//! Input generators and the length-spec mini-language.

use std::fmt;
use std::str::FromStr;

use crate::constructions::{pad_string, SweepParams};
use crate::machine::Word;
use crate::oracles::{erb_member, ld_members_up_to, least_distinguishing_modulus, lj_member};

/// `members:<count>`, `range:<lo>:<hi>:<step>` or `pow2:<lo>:<hi>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthSpec {
    Members(usize),
    Range { lo: usize, hi: usize, step: usize },
    /// Powers of two within `[lo, hi]`.
    Pow2 { lo: usize, hi: usize },
}

impl LengthSpec {
    /// The values of a range or pow2 spec; `Members(c)` yields `1..=c`.
    pub fn values(&self) -> Vec<usize> {
        match *self {
            LengthSpec::Members(c) => (1..=c).collect(),
            LengthSpec::Range { lo, hi, step } => (lo..=hi).step_by(step).collect(),
            LengthSpec::Pow2 { lo, hi } => {
                std::iter::successors(Some(1usize), |p| p.checked_mul(2))
                    .skip_while(|&p| p < lo)
                    .take_while(|&p| p <= hi)
                    .collect()
            }
        }
    }
}

impl FromStr for LengthSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad number {t:?} in length spec {s:?}"));
        match parts.as_slice() {
            ["members", c] => Ok(LengthSpec::Members(num(c)?)),
            ["range", lo, hi, step] => {
                let step = num(step)?;
                if step == 0 {
                    return Err(format!("zero step in length spec {s:?}"));
                }
                Ok(LengthSpec::Range { lo: num(lo)?, hi: num(hi)?, step })
            }
            ["pow2", lo, hi] => Ok(LengthSpec::Pow2 { lo: num(lo)?, hi: num(hi)? }),
            _ => Err(format!(
                "malformed length spec {s:?} (members:<count>, range:<lo>:<hi>:<step>, pow2:<lo>:<hi>)"
            )),
        }
    }
}

impl fmt::Display for LengthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthSpec::Members(c) => write!(f, "members:{c}"),
            LengthSpec::Range { lo, hi, step } => write!(f, "range:{lo}:{hi}:{step}"),
            LengthSpec::Pow2 { lo, hi } => write!(f, "pow2:{lo}:{hi}"),
        }
    }
}

/// Input families for sweeps.
///
/// For `unary` and `ld` a range or pow2 spec lists input lengths; for
/// `erb`, `lj<j>` and `gcm` it lists the member index k; for `jk` and
/// `jk-padded` it lists r + s and the hardest pair of that length is used.
/// `members:<c>` takes the first c members (for `jk*`, lengths 1 … c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Unary(String),
    Ld,
    Erb,
    Lj(usize),
    Gcm,
    Jk,
    JkPadded,
}

impl FromStr for Generator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(sym) = s.strip_prefix("unary:") {
            if sym.is_empty() {
                return Err("unary generator needs a symbol".into());
            }
            return Ok(Generator::Unary(sym.to_string()));
        }
        match s {
            "unary" => Ok(Generator::Unary("a".into())),
            "ld" => Ok(Generator::Ld),
            "erb" => Ok(Generator::Erb),
            "gcm" => Ok(Generator::Gcm),
            "jk" => Ok(Generator::Jk),
            "jk-padded" => Ok(Generator::JkPadded),
            _ => match s.strip_prefix("lj").and_then(|j| j.parse::<usize>().ok()) {
                Some(j) if j >= 2 => Ok(Generator::Lj(j)),
                _ => Err(format!(
                    "unknown generator {s:?} (unary:<sym>, ld, erb, lj<j>, gcm, jk, jk-padded)"
                )),
            },
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Unary(s) => write!(f, "unary:{s}"),
            Generator::Ld => f.write_str("ld"),
            Generator::Erb => f.write_str("erb"),
            Generator::Lj(j) => write!(f, "lj{j}"),
            Generator::Gcm => f.write_str("gcm"),
            Generator::Jk => f.write_str("jk"),
            Generator::JkPadded => f.write_str("jk-padded"),
        }
    }
}

fn repeat(sym: &str, n: usize) -> Word {
    vec![sym.to_string(); n]
}

/// a^m b^lcm(1..m), or `None` once the lcm overflows.
pub fn gcm_member(m: usize) -> Option<Word> {
    let mut l: usize = 1;
    for i in 2..=m {
        l = l.checked_mul(i / gcd(l, i))?;
    }
    let mut w = repeat("a", m);
    w.extend(repeat("b", l));
    Some(w)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The pair r + s = n, r ≠ s, with the largest least distinguishing
/// modulus (smallest r on ties), together with that modulus.
pub fn hardest_pair(n: usize) -> Option<(usize, usize, u64)> {
    (0..=n)
        .filter_map(|r| least_distinguishing_modulus(r as u64, (n - r) as u64).map(|l| (r, n - r, l)))
        .fold(None, |best: Option<(usize, usize, u64)>, c| match best {
            Some(b) if b.2 >= c.2 => Some(b),
            _ => Some(c),
        })
}

pub fn jk_word(r: usize, s: usize) -> Word {
    let mut w = repeat("a", r);
    w.extend(repeat("b", s));
    w
}

/// a^r b^s padded for the path that guesses the least distinguishing modulus.
pub fn jk_padded_word(r: usize, s: usize, p: SweepParams) -> Option<Word> {
    let l = least_distinguishing_modulus(r as u64, s as u64)?;
    Some(pad_string(&jk_word(r, s), p.pad_for(l)))
}

impl Generator {
    pub fn inputs(&self, lengths: &LengthSpec) -> Result<Vec<Word>, String> {
        let vals = lengths.values();
        let members = matches!(lengths, LengthSpec::Members(_));
        Ok(match self {
            Generator::Unary(sym) => {
                if members {
                    return Err("unary inputs take range or pow2 lengths".into());
                }
                vals.iter().map(|&n| repeat(sym, n)).collect()
            }
            Generator::Ld if members => {
                let count = vals.len();
                let mut limit = 64;
                loop {
                    let found = ld_members_up_to(limit);
                    if found.len() >= count {
                        break found.into_iter().take(count).map(|n| repeat("a", n)).collect();
                    }
                    limit = limit.checked_mul(4).ok_or("too many ld members")?;
                }
            }
            Generator::Ld => vals.iter().map(|&n| repeat("a", n)).collect(),
            Generator::Erb => vals.iter().filter(|&&k| k >= 1).map(|&k| erb_member(k)).collect(),
            Generator::Lj(j) => vals.iter().filter(|&&k| k >= 1).map(|&k| lj_member(*j, k)).collect(),
            Generator::Gcm => vals
                .iter()
                .map(|&m| gcm_member(m).ok_or_else(|| format!("gcm member for m = {m} is too long")))
                .collect::<Result<_, _>>()?,
            Generator::Jk => vals.iter().filter_map(|&n| hardest_pair(n)).map(|(r, s, _)| jk_word(r, s)).collect(),
            Generator::JkPadded => vals
                .iter()
                .filter_map(|&n| hardest_pair(n))
                .filter_map(|(r, s, _)| jk_padded_word(r, s, SweepParams::default()))
                .collect(),
        })
    }
}
