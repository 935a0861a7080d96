//! Run configuration: flags layered over an optional `key = value` file.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use weakcliff::quotient::RelationFamily;
use weakcliff::{HalfInteger, MetricSpace};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "WEAKCLIFF_CONFIG";

pub const KEYS: [&str; 10] = [
    "algebra", "spin", "degree", "headroom", "format", "seed", "signature", "suite", "kmax",
    "cases",
];

/// Parsed `key = value` pairs. Blank lines and `#` comments are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConfigFile(BTreeMap<String, String>);

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", n + 1))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(format!("config line {}: unknown key `{k}`", n + 1));
            }
            map.insert(k.to_string(), v.trim().to_string());
        }
        Ok(ConfigFile(map))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// The file named by [`CONFIG_ENV`], or an empty config.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    /// `flag` if given, else the file value for `key`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, String>
    where
        T::Err: fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.0
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| format!("config key `{key}`: {e}"))
            })
            .transpose()
    }
}

/// Which quotient of the tensor algebra to work in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Free,
    Clifford,
    Weak,
    Sym,
    Spin(HalfInteger),
}

impl FromStr for Algebra {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "free" => Ok(Algebra::Free),
            "clifford" => Ok(Algebra::Clifford),
            "weak" => Ok(Algebra::Weak),
            "sym" => Ok(Algebra::Sym),
            _ => match s.strip_prefix("spin:") {
                Some(v) => v.parse().map(Algebra::Spin).map_err(|e| e.to_string()),
                None => Err(format!(
                    "unknown algebra `{s}` (expected free, clifford, weak, sym or spin:s)"
                )),
            },
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Free => write!(f, "free"),
            Algebra::Clifford => write!(f, "clifford"),
            Algebra::Weak => write!(f, "weak"),
            Algebra::Sym => write!(f, "sym"),
            Algebra::Spin(s) => write!(f, "spin:{s}"),
        }
    }
}

impl Algebra {
    /// `spin:0` becomes `sym`; the multipole construction has nothing to quotient there.
    pub fn routed(self) -> (Algebra, Option<&'static str>) {
        match self {
            Algebra::Spin(s) if s.is_zero() => (
                Algebra::Sym,
                Some("note: spin 0 is handled by the symmetric relations (commutative quotient)"),
            ),
            other => (other, None),
        }
    }

    pub fn relations(self, space: &MetricSpace) -> Result<RelationFamily, String> {
        let n = space.dim();
        Ok(match self {
            Algebra::Free => RelationFamily::free(n),
            Algebra::Clifford => RelationFamily::clifford(space),
            Algebra::Weak => RelationFamily::weak(space),
            Algebra::Sym => RelationFamily::sym(n),
            Algebra::Spin(s) => {
                if *space != MetricSpace::euclidean(3) {
                    return Err("spin algebras live over three-dimensional Euclidean space".into());
                }
                RelationFamily::spin_weak(s).map_err(|e| e.to_string())?
            }
        })
    }
}

/// Metric signature `p,q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
}

impl FromStr for Signature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid signature `{s}` (expected p,q such as 3,0)");
        let (p, q) = s.split_once(',').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        if p + q == 0 || p + q > 9 {
            return Err(format!("signature `{s}`: dimension must be between 1 and 9"));
        }
        Ok(Signature { p, q })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl Signature {
    pub fn space(self) -> MetricSpace {
        MetricSpace::signature(self.p, self.q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected text or json)")),
        }
    }
}

/// The resolved configuration echoed into JSON reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub algebra: String,
    pub signature: Signature,
    pub degree: Option<usize>,
    pub headroom: usize,
    pub format: Format,
    pub seed: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let c = ConfigFile::parse("# defaults\nalgebra = weak\n\ndegree=5 # trailing\n").unwrap();
        assert_eq!(c.pick::<usize>(None, "degree").unwrap(), Some(5));
        assert_eq!(c.pick(Some(2usize), "degree").unwrap(), Some(2));
        assert_eq!(c.pick::<Algebra>(None, "algebra").unwrap(), Some(Algebra::Weak));
        assert_eq!(c.pick::<u64>(None, "seed").unwrap(), None);
        assert!(ConfigFile::parse("colour = red").is_err());
        assert!(ConfigFile::parse("degree 5").is_err());
        let bad = ConfigFile::parse("degree = five").unwrap();
        assert!(bad.pick::<usize>(None, "degree").is_err());
    }

    #[test]
    fn algebra_selector() {
        assert_eq!("clifford".parse::<Algebra>().unwrap(), Algebra::Clifford);
        let half: Algebra = "spin:1/2".parse().unwrap();
        assert_eq!(half.to_string(), "spin:1/2");
        assert_eq!("spin:0".parse::<Algebra>().unwrap().routed().0, Algebra::Sym);
        assert!("spin:1/3".parse::<Algebra>().is_err());
        assert!("lie".parse::<Algebra>().is_err());
    }

    #[test]
    fn signature_parsing() {
        assert_eq!("1,3".parse::<Signature>().unwrap(), Signature { p: 1, q: 3 });
        assert!("0,0".parse::<Signature>().is_err());
        assert!("3".parse::<Signature>().is_err());
    }
}
