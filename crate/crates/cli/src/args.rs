use std::fmt;
use std::str::FromStr;

/// An inclusive integer range given as `a..b`, `a..=b`, a single value, or `all`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Span {
    All,
    Range(i64, i64),
}

impl Span {
    /// Values in the span that also lie in `[lo, hi]`, ascending.
    pub fn within(self, lo: i64, hi: i64) -> impl Iterator<Item = i64> {
        let (a, b) = match self {
            Span::All => (lo, hi),
            Span::Range(a, b) => (a.max(lo), b.min(hi)),
        };
        a..=b
    }

    /// Both ends of an explicit span.
    pub fn bounded(self) -> Option<(i64, i64)> {
        match self {
            Span::All => None,
            Span::Range(a, b) => Some((a, b)),
        }
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "all" {
            return Ok(Span::All);
        }
        let int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| format!("expected an integer, a range a..b, or 'all', got '{s}'"))
        };
        let skip = usize::from(s.starts_with('-'));
        match s[skip..].find("..").map(|i| i + skip) {
            Some(i) => {
                let rest = &s[i + 2..];
                let rest = rest.strip_prefix('=').unwrap_or(rest);
                Ok(Span::Range(int(&s[..i])?, int(rest)?))
            }
            None => {
                let v = int(s)?;
                Ok(Span::Range(v, v))
            }
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Span::All => f.write_str("all"),
            Span::Range(a, b) if a == b => write!(f, "{a}"),
            Span::Range(a, b) => write!(f, "{a}..{b}"),
        }
    }
}

/// Overlap selection: `tight` (k - 1), `all`, or a span of values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllChoice {
    Tight,
    Values(Span),
}

impl EllChoice {
    pub fn for_k(self, k: usize) -> Vec<usize> {
        match self {
            EllChoice::Tight => vec![k - 1],
            EllChoice::Values(span) => span.within(1, k as i64 - 1).map(|v| v as usize).collect(),
        }
    }
}

impl FromStr for EllChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "tight" => Ok(EllChoice::Tight),
            other => other.parse().map(EllChoice::Values),
        }
    }
}
