//! Text syntax for delay models: a keyword followed by `name=value` pairs,
//! e.g. `bdc mr=1 dr=2 mf=1 df=2` or `sdbridc d=3/2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use super::{AicParams, BdcParams, DelayModel, ParamError, RicParams};
use crate::time::Time;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelParseError {
    #[error("empty model")]
    Empty,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("expected name=value, got `{0}`")]
    Malformed(String),
    #[error("bad value in `{token}`: {reason}")]
    BadValue { token: String, reason: String },
    #[error("parameter `{0}` given twice")]
    Duplicate(String),
    #[error("unknown parameter `{name}` for {model}")]
    UnknownParam { model: &'static str, name: String },
    #[error("missing parameter `{name}` for {model}")]
    Missing { model: &'static str, name: &'static str },
    #[error(transparent)]
    Param(#[from] ParamError),
}

const BDC: [&str; 4] = ["mr", "dr", "mf", "df"];
const RIC: [&str; 4] = ["mur", "deltar", "muf", "deltaf"];

fn keys(model: &str) -> Option<(&'static str, Vec<&'static str>)> {
    let (name, ks): (&'static str, Vec<&'static str>) = match model {
        "sc" => ("sc", vec![]),
        "fixed" => ("fixed", vec!["d"]),
        "bdc" => ("bdc", BDC.to_vec()),
        "bdcprime" => ("bdcprime", vec!["dr", "df"]),
        "windowand" => ("windowand", vec!["m", "d"]),
        "windowor" => ("windowor", vec!["m", "d"]),
        "aic" => ("aic", vec!["dr", "df"]),
        "aicprime" => ("aicprime", vec!["dr", "df"]),
        "ric" => ("ric", RIC.to_vec()),
        "ricprime" => ("ricprime", vec!["deltar", "deltaf"]),
        "baidc" => ("baidc", [&BDC[..], &["deltar", "deltaf"]].concat()),
        "bridc" => ("bridc", [&BDC[..], &RIC[..]].concat()),
        "dbridc" => ("dbridc", BDC.to_vec()),
        "sdbridc" => ("sdbridc", vec!["d"]),
        _ => return None,
    };
    Some((name, ks))
}

impl FromStr for DelayModel {
    type Err = ModelParseError;

    fn from_str(s: &str) -> Result<DelayModel, ModelParseError> {
        let mut tokens = s.split_whitespace();
        let head = tokens.next().ok_or(ModelParseError::Empty)?;
        let lower = head.to_ascii_lowercase();
        let (model, allowed) = keys(&lower).ok_or_else(|| ModelParseError::UnknownModel(head.to_string()))?;
        let mut vals: BTreeMap<&'static str, Time> = BTreeMap::new();
        for tok in tokens {
            let (k, v) = tok.split_once('=').ok_or_else(|| ModelParseError::Malformed(tok.to_string()))?;
            let key = allowed
                .iter()
                .copied()
                .find(|a| a.eq_ignore_ascii_case(k))
                .ok_or_else(|| ModelParseError::UnknownParam { model, name: k.to_string() })?;
            let value: Time = v
                .parse()
                .map_err(|e: crate::time::TimeParseError| ModelParseError::BadValue {
                    token: tok.to_string(),
                    reason: e.to_string(),
                })?;
            if vals.insert(key, value).is_some() {
                return Err(ModelParseError::Duplicate(key.to_string()));
            }
        }
        let get = |name: &'static str| vals.get(name).copied().ok_or(ModelParseError::Missing { model, name });
        let bdc = || -> Result<BdcParams, ModelParseError> {
            Ok(BdcParams { m_r: get("mr")?, d_r: get("dr")?, m_f: get("mf")?, d_f: get("df")? })
        };
        let ric = || -> Result<RicParams, ModelParseError> {
            Ok(RicParams { mu_r: get("mur")?, delta_r: get("deltar")?, mu_f: get("muf")?, delta_f: get("deltaf")? })
        };
        let m = match model {
            "sc" => DelayModel::Sc,
            "fixed" => DelayModel::Fixed(get("d")?),
            "bdc" => DelayModel::Bdc(bdc()?),
            "bdcprime" => DelayModel::BdcPrime { d_r: get("dr")?, d_f: get("df")? },
            "windowand" => DelayModel::WindowAnd { m: get("m")?, d: get("d")? },
            "windowor" => DelayModel::WindowOr { m: get("m")?, d: get("d")? },
            "aic" => DelayModel::Aic(AicParams { delta_r: get("dr")?, delta_f: get("df")? }),
            "aicprime" => DelayModel::AicPrime(AicParams { delta_r: get("dr")?, delta_f: get("df")? }),
            "ric" => DelayModel::Ric(ric()?),
            "ricprime" => DelayModel::RicPrime(RicParams {
                mu_r: Time::ZERO,
                delta_r: get("deltar")?,
                mu_f: Time::ZERO,
                delta_f: get("deltaf")?,
            }),
            "baidc" => DelayModel::Baidc(bdc()?, AicParams { delta_r: get("deltar")?, delta_f: get("deltaf")? }),
            "bridc" => DelayModel::Bridc(bdc()?, ric()?),
            "dbridc" => DelayModel::Dbridc(bdc()?),
            "sdbridc" => DelayModel::SdbridcPrime(get("d")?),
            _ => unreachable!("keys() covers every model"),
        };
        Ok(m)
    }
}

fn write_bdc(f: &mut fmt::Formatter<'_>, p: &BdcParams) -> fmt::Result {
    write!(f, "mr={} dr={} mf={} df={}", p.m_r, p.d_r, p.m_f, p.d_f)
}

fn write_ric(f: &mut fmt::Formatter<'_>, r: &RicParams) -> fmt::Result {
    write!(f, "mur={} deltar={} muf={} deltaf={}", r.mu_r, r.delta_r, r.mu_f, r.delta_f)
}

impl fmt::Display for BdcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_bdc(f, self)
    }
}

impl fmt::Display for DelayModel {
    /// Prints the text syntax accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            DelayModel::Sc => Ok(()),
            DelayModel::Fixed(d) | DelayModel::SdbridcPrime(d) => write!(f, " d={d}"),
            DelayModel::Bdc(p) | DelayModel::Dbridc(p) => {
                f.write_str(" ")?;
                write_bdc(f, p)
            }
            DelayModel::BdcPrime { d_r, d_f } => write!(f, " dr={d_r} df={d_f}"),
            DelayModel::WindowAnd { m, d } | DelayModel::WindowOr { m, d } => write!(f, " m={m} d={d}"),
            DelayModel::Aic(a) | DelayModel::AicPrime(a) => write!(f, " dr={} df={}", a.delta_r, a.delta_f),
            DelayModel::Ric(r) => {
                f.write_str(" ")?;
                write_ric(f, r)
            }
            DelayModel::RicPrime(r) => write!(f, " deltar={} deltaf={}", r.delta_r, r.delta_f),
            DelayModel::Baidc(p, a) => {
                f.write_str(" ")?;
                write_bdc(f, p)?;
                write!(f, " deltar={} deltaf={}", a.delta_r, a.delta_f)
            }
            DelayModel::Bridc(p, r) => {
                f.write_str(" ")?;
                write_bdc(f, p)?;
                f.write_str(" ")?;
                write_ric(f, r)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::time::t;

    #[test]
    fn parses_every_keyword() {
        let texts = [
            "sc",
            "fixed d=2",
            "bdc mr=1 dr=2 mf=1 df=2",
            "bdcprime dr=2 df=3",
            "windowand m=1 d=2",
            "windowor m=1 d=2",
            "aic dr=1 df=0",
            "aicprime dr=1 df=0",
            "ric mur=1 deltar=2 muf=1 deltaf=2",
            "ricprime deltar=2 deltaf=1",
            "baidc mr=1 dr=2 mf=1 df=2 deltar=1 deltaf=1",
            "bridc mr=0 dr=2 mf=0 df=2 mur=0 deltar=2 muf=0 deltaf=2",
            "dbridc mr=1 dr=2 mf=1 df=2",
            "sdbridc d=3/2",
        ];
        for s in texts {
            let m: DelayModel = s.parse().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(m.to_string(), s);
        }
    }

    #[test]
    fn exact_values() {
        let m: DelayModel = "bdc mr=0.5 dr=5/2 mf=0 df=2.5".parse().unwrap();
        assert_eq!(m, DelayModel::Bdc(BdcParams { m_r: t(1, 2), d_r: t(5, 2), m_f: Time::ZERO, d_f: t(5, 2) }));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!("".parse::<DelayModel>(), Err(ModelParseError::Empty)));
        assert!(matches!("bogus d=1".parse::<DelayModel>(), Err(ModelParseError::UnknownModel(_))));
        assert!(matches!("fixed 2".parse::<DelayModel>(), Err(ModelParseError::Malformed(_))));
        assert!(matches!("fixed d=1e3".parse::<DelayModel>(), Err(ModelParseError::BadValue { .. })));
        assert!(matches!("fixed d=1 d=2".parse::<DelayModel>(), Err(ModelParseError::Duplicate(_))));
        assert!(matches!("fixed q=1".parse::<DelayModel>(), Err(ModelParseError::UnknownParam { .. })));
        assert!(matches!("bdc mr=1 dr=2".parse::<DelayModel>(), Err(ModelParseError::Missing { .. })));
    }
}
