//! Four-level outcome used for every decision about a possibly infinite object.

use std::fmt;

/// Outcome level. The derived order is the information order
/// `No < Unknown < YesSampled < YesUniversal` used when sorting and printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    No,
    Unknown,
    YesSampled,
    YesUniversal,
}

impl Level {
    pub fn is_yes(self) -> bool {
        matches!(self, Level::YesSampled | Level::YesUniversal)
    }

    pub fn is_conclusive(self) -> bool {
        self != Level::Unknown
    }

    /// Join of two route conclusions about the same question: a refutation
    /// dominates, then universal, then sampled, then unknown.
    pub fn join(self, other: Level) -> Level {
        fn rank(l: Level) -> u8 {
            match l {
                Level::No => 3,
                Level::YesUniversal => 2,
                Level::YesSampled => 1,
                Level::Unknown => 0,
            }
        }
        if rank(self) >= rank(other) {
            self
        } else {
            other
        }
    }

    /// Conjunction: every part must hold.
    pub fn meet(self, other: Level) -> Level {
        use Level::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Unknown, _) | (_, Unknown) => Unknown,
            (YesSampled, _) | (_, YesSampled) => YesSampled,
            (YesUniversal, YesUniversal) => YesUniversal,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Level::No => "no",
            Level::Unknown => "unknown",
            Level::YesSampled => "yes-sampled",
            Level::YesUniversal => "yes-universal",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A level plus the evidence backing it. Yes levels carry a certificate,
/// `No` carries a witness; both are canonical text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub level: Level,
    pub certificate: Option<String>,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn universal(certificate: impl Into<String>) -> Self {
        Verdict {
            level: Level::YesUniversal,
            certificate: Some(certificate.into()),
            witness: None,
        }
    }

    pub fn sampled(certificate: impl Into<String>) -> Self {
        Verdict {
            level: Level::YesSampled,
            certificate: Some(certificate.into()),
            witness: None,
        }
    }

    pub fn no(witness: impl Into<String>) -> Self {
        Verdict {
            level: Level::No,
            certificate: None,
            witness: Some(witness.into()),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        Verdict {
            level: Level::Unknown,
            certificate: None,
            witness: Some(reason.into()),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.level.is_yes()
    }

    pub fn is_no(&self) -> bool {
        self.level == Level::No
    }

    /// Human summary such as `yes (universal)` or `no (witness: ...)`.
    pub fn summary(&self) -> String {
        match self.level {
            Level::YesUniversal => "yes (universal)".to_string(),
            Level::YesSampled => "yes (sampled)".to_string(),
            Level::No => match &self.witness {
                Some(w) => format!("no (witness: {w})"),
                None => "no".to_string(),
            },
            Level::Unknown => "unknown".to_string(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_prefers_refutation_then_universal() {
        use Level::*;
        assert_eq!(No.join(YesUniversal), No);
        assert_eq!(YesSampled.join(YesUniversal), YesUniversal);
        assert_eq!(Unknown.join(YesSampled), YesSampled);
        assert_eq!(Unknown.join(Unknown), Unknown);
    }

    #[test]
    fn meet_is_conjunction() {
        use Level::*;
        assert_eq!(YesUniversal.meet(YesUniversal), YesUniversal);
        assert_eq!(YesUniversal.meet(YesSampled), YesSampled);
        assert_eq!(YesUniversal.meet(Unknown), Unknown);
        assert_eq!(Unknown.meet(No), No);
    }
}
