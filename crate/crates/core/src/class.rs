//! Sequence-class descriptors and their structural metadata.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::index::Index;

/// Deepest supported nesting of `dual(...)`.
pub const MAX_DUAL_DEPTH: usize = 2;

/// A sequence class `E ↦ X(E)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassId {
    /// Absolutely `p`-summable sequences, `1 ≤ p < ∞`.
    Lp(Index),
    LInf,
    /// Norm-null sequences.
    C0,
    /// Weakly null sequences.
    C0w,
    /// Weakly `p`-summable sequences.
    LpWeak(Index),
    /// Unconditionally `p`-summable sequences.
    LpUnc(Index),
    /// Cohen strongly `p`-summable sequences.
    Cohen(Index),
    /// Mid `p`-summable sequences.
    Mid(Index),
    /// Almost unconditionally summable sequences (Rademacher averages).
    Rad,
    /// Sequences with bounded Rademacher prefix averages.
    RadSup,
    Dual(Box<ClassId>),
}

/// Structural properties of a sequence class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassFlags {
    pub linearly_stable: bool,
    pub finitely_determined: bool,
    pub finitely_dominated: bool,
    pub finitely_injective: bool,
    pub spherically_complete: bool,
    /// Finitely supported sequences are dense.
    pub c00_dense: bool,
    /// `(X^dual)^dual = X`.
    pub reflexive: bool,
}

impl ClassFlags {
    pub fn dual_representable(&self) -> bool {
        self.linearly_stable
            && self.finitely_dominated
            && self.finitely_injective
            && self.spherically_complete
            && self.c00_dense
    }

    /// The first property required for dual representability that fails.
    pub fn missing_for_dual_representable(&self) -> Option<&'static str> {
        [
            (self.linearly_stable, "linearly stable"),
            (self.finitely_dominated, "finitely dominated"),
            (self.finitely_injective, "finitely injective"),
            (self.spherically_complete, "spherically complete"),
            (
                self.c00_dense,
                "a class in which finitely supported sequences are dense",
            ),
        ]
        .into_iter()
        .find_map(|(ok, name)| (!ok).then_some(name))
    }
}

fn finite_index(p: Index, what: &str) -> Result<Index> {
    if p.is_infinite() {
        return Err(Error::InvalidClass(format!("{what} needs a finite index")));
    }
    Ok(p)
}

impl ClassId {
    pub fn lp(p: Index) -> ClassId {
        if p.is_infinite() {
            ClassId::LInf
        } else {
            ClassId::Lp(p)
        }
    }

    /// `dual(inner)`, checked against the nesting and sign-invariance rules.
    pub fn dual(inner: ClassId) -> Result<ClassId> {
        let c = ClassId::Dual(Box::new(inner));
        c.validate()?;
        Ok(c)
    }

    pub fn dual_depth(&self) -> usize {
        match self {
            ClassId::Dual(inner) => 1 + inner.dual_depth(),
            _ => 0,
        }
    }

    pub fn index(&self) -> Option<Index> {
        match self {
            ClassId::Lp(p)
            | ClassId::LpWeak(p)
            | ClassId::LpUnc(p)
            | ClassId::Cohen(p)
            | ClassId::Mid(p) => Some(*p),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ClassId::Lp(p) | ClassId::LpWeak(p) | ClassId::LpUnc(p) | ClassId::Mid(p) => {
                finite_index(*p, &self.to_string()).map(|_| ())
            }
            ClassId::Dual(inner) => {
                if self.dual_depth() > MAX_DUAL_DEPTH {
                    return Err(Error::InvalidClass(format!(
                        "dual nesting deeper than {MAX_DUAL_DEPTH} is not supported"
                    )));
                }
                inner.validate()?;
                if !inner.flags().spherically_complete {
                    return Err(Error::Hypothesis {
                        result: "the dual class".into(),
                        class: inner.to_string(),
                        flag: "spherically complete".into(),
                    });
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// A non-dual class whose norm coincides with this one on every finite
    /// sequence, when such a closed form is known.
    pub fn closed_form(&self) -> Option<ClassId> {
        match self {
            ClassId::Dual(inner) => {
                let inner = match inner.as_ref() {
                    ClassId::Dual(_) => inner.closed_form()?,
                    other => other.clone(),
                };
                match inner {
                    ClassId::Lp(p) if p.is_one() => Some(ClassId::LInf),
                    ClassId::Lp(p) => Some(ClassId::Lp(p.conjugate())),
                    ClassId::LInf | ClassId::C0 | ClassId::C0w => Some(ClassId::Lp(Index::ONE)),
                    ClassId::LpWeak(p) | ClassId::LpUnc(p) => Some(ClassId::Cohen(p.conjugate())),
                    _ => None,
                }
            }
            _ => Some(self.clone()),
        }
    }

    pub fn flags(&self) -> ClassFlags {
        let all = ClassFlags {
            linearly_stable: true,
            finitely_determined: true,
            finitely_dominated: true,
            finitely_injective: true,
            spherically_complete: true,
            c00_dense: true,
            reflexive: true,
        };
        match self {
            ClassId::Lp(_) => all,
            ClassId::LInf => ClassFlags {
                c00_dense: false,
                finitely_dominated: false,
                ..all
            },
            ClassId::C0 => ClassFlags {
                finitely_determined: false,
                reflexive: false,
                ..all
            },
            ClassId::C0w => ClassFlags {
                linearly_stable: true,
                spherically_complete: true,
                ..ClassFlags::default()
            },
            ClassId::LpWeak(_) => ClassFlags {
                c00_dense: false,
                reflexive: false,
                ..all
            },
            ClassId::LpUnc(_) => ClassFlags {
                finitely_determined: false,
                reflexive: false,
                ..all
            },
            ClassId::Cohen(_) | ClassId::Mid(_) => ClassFlags {
                linearly_stable: true,
                finitely_determined: true,
                spherically_complete: true,
                ..ClassFlags::default()
            },
            ClassId::Rad => ClassFlags {
                linearly_stable: true,
                finitely_dominated: true,
                ..ClassFlags::default()
            },
            ClassId::RadSup => ClassFlags {
                linearly_stable: true,
                finitely_determined: true,
                ..ClassFlags::default()
            },
            ClassId::Dual(inner) => {
                if let Some(eq) = self.closed_form() {
                    return eq.flags();
                }
                ClassFlags {
                    linearly_stable: inner.flags().linearly_stable,
                    finitely_determined: true,
                    spherically_complete: true,
                    ..ClassFlags::default()
                }
            }
        }
    }

    /// Caveat printed when two classes differ only in infinite dimensions.
    pub fn finite_length_caveat(&self) -> Option<&'static str> {
        match self {
            ClassId::C0 | ClassId::C0w => {
                Some("at finite length this class has the same norm as linf")
            }
            ClassId::LpUnc(_) => Some("at finite length this class has the same norm as lpw"),
            ClassId::Dual(inner) => inner.finite_length_caveat(),
            _ => None,
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Lp(p) => write!(f, "lp:{p}"),
            ClassId::LInf => f.write_str("linf"),
            ClassId::C0 => f.write_str("c0"),
            ClassId::C0w => f.write_str("c0w"),
            ClassId::LpWeak(p) => write!(f, "lpw:{p}"),
            ClassId::LpUnc(p) => write!(f, "lpu:{p}"),
            ClassId::Cohen(p) => write!(f, "cohen:{p}"),
            ClassId::Mid(p) => write!(f, "mid:{p}"),
            ClassId::Rad => f.write_str("rad"),
            ClassId::RadSup => f.write_str("RAD"),
            ClassId::Dual(inner) => write!(f, "dual({inner})"),
        }
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("dual(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidClass(format!("unbalanced parentheses in `{s}`")))?;
            return ClassId::dual(inner.parse()?);
        }
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (s, None),
        };
        let index = || -> Result<Index> {
            arg.ok_or_else(|| {
                Error::InvalidClass(format!("`{name}` needs an index, e.g. `{name}:2`"))
            })?
            .parse()
        };
        let bare = |c: ClassId| -> Result<ClassId> {
            match arg {
                Some(_) => Err(Error::InvalidClass(format!("`{name}` takes no index"))),
                None => Ok(c),
            }
        };
        let class = match name {
            "lp" => ClassId::lp(index()?),
            "linf" => bare(ClassId::LInf)?,
            "c0" => bare(ClassId::C0)?,
            "c0w" => bare(ClassId::C0w)?,
            "lpw" => ClassId::LpWeak(index()?),
            "lpu" => ClassId::LpUnc(index()?),
            "cohen" => ClassId::Cohen(index()?),
            "mid" => ClassId::Mid(index()?),
            "rad" => bare(ClassId::Rad)?,
            "RAD" => bare(ClassId::RadSup)?,
            _ => return Err(Error::InvalidClass(format!("unknown class `{s}`"))),
        };
        class.validate()?;
        Ok(class)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> ClassId {
        s.parse().unwrap()
    }

    #[test]
    fn round_trip_syntax() {
        for s in [
            "lp:2",
            "lp:4/3",
            "linf",
            "c0",
            "c0w",
            "lpw:2",
            "lpu:3",
            "cohen:2",
            "mid:2",
            "rad",
            "RAD",
            "dual(lp:2)",
            "dual(dual(lpw:4))",
            "cohen:inf",
        ] {
            assert_eq!(c(s).to_string(), s);
        }
        assert_eq!(c("lp:inf"), ClassId::LInf);
    }

    #[test]
    fn rejects_bad_classes() {
        for s in [
            "lq:2",
            "lp",
            "linf:2",
            "lpw:inf",
            "dual(rad)",
            "dual(RAD)",
            "dual(lp:2",
            "dual(dual(dual(lp:2)))",
            "mid:0.5",
        ] {
            assert!(s.parse::<ClassId>().is_err(), "{s}");
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(c("dual(lp:2)").closed_form(), Some(c("lp:2")));
        assert_eq!(c("dual(lp:4)").closed_form(), Some(c("lp:4/3")));
        assert_eq!(c("dual(lp:1)").closed_form(), Some(ClassId::LInf));
        assert_eq!(c("dual(linf)").closed_form(), Some(c("lp:1")));
        assert_eq!(c("dual(lpw:4)").closed_form(), Some(c("cohen:4/3")));
        assert_eq!(c("dual(lpw:1)").closed_form(), Some(c("cohen:inf")));
        assert_eq!(c("dual(dual(lp:1))").closed_form(), Some(c("lp:1")));
        assert_eq!(c("dual(dual(linf))").closed_form(), Some(ClassId::LInf));
        assert_eq!(c("dual(mid:2)").closed_form(), None);
        assert_eq!(c("dual(dual(lpw:2))").closed_form(), None);
    }

    #[test]
    fn metadata() {
        assert!(c("lp:2").flags().dual_representable());
        assert!(c("lpu:2").flags().dual_representable());
        assert!(c("c0").flags().dual_representable());
        assert!(!c("linf").flags().dual_representable());
        assert!(!c("lpw:2").flags().dual_representable());
        assert_eq!(
            c("lpw:2").flags().missing_for_dual_representable(),
            Some("a class in which finitely supported sequences are dense")
        );
        assert!(!c("rad").flags().spherically_complete);
        assert!(c("dual(lpw:2)").flags().spherically_complete);
        assert!(c("dual(linf)").flags().reflexive);
        assert!(c("dual(mid:2)").flags().finitely_determined);
    }
}
