use std::path::PathBuf;

use clap::{Args, ValueEnum};
use cremona_core::oracle::{DEFAULT_PRIME, DEFAULT_SEED};
use cremona_core::weyl::CatalogCache;
use cremona_core::{Error, Result, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Options shared by every subcommand. Flags win over the environment,
/// which wins over the built-in defaults.
#[derive(Args, Clone, Debug)]
pub struct ConfigArgs {
    /// Space as "n,s".
    #[arg(long, global = true, value_parser = parse_space)]
    pub space: Option<Space>,

    /// Degree bound for orbit searches; required on spaces that are not Mori dream.
    #[arg(long, global = true, env = "CREMONA_DEGREE_BOUND")]
    pub degree_bound: Option<u64>,

    #[arg(long, global = true, env = "CREMONA_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long, global = true, env = "CREMONA_PRIME", default_value_t = DEFAULT_PRIME)]
    pub prime: u64,

    /// Directory for cached orbit catalogs.
    #[arg(long, global = true, env = "CREMONA_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true, value_enum, env = "CREMONA_FORMAT", default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub space: Option<Space>,
    pub degree_bound: Option<u64>,
    pub seed: u64,
    pub prime: u64,
    pub cache: Option<CatalogCache>,
    pub format: Format,
}

pub fn parse_space(text: &str) -> std::result::Result<Space, String> {
    let (n, s) = text.split_once(',').ok_or_else(|| format!("expected \"n,s\", got {text:?}"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("bad n in {text:?}"))?;
    let s: usize = s.trim().parse().map_err(|_| format!("bad s in {text:?}"))?;
    Space::new(n, s).map_err(|e| e.to_string())
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

impl RunConfig {
    pub fn from_args(args: &ConfigArgs) -> Result<Self> {
        if args.degree_bound == Some(0) {
            return Err(Error::InvalidBound("degree bound must be positive".into()));
        }
        if !is_prime(args.prime) || args.prime < 3 {
            return Err(Error::Parse(format!("{} is not an odd prime", args.prime)));
        }
        let cache = args.cache_dir.as_ref().map(CatalogCache::open).transpose()?;
        Ok(RunConfig {
            space: args.space,
            degree_bound: args.degree_bound,
            seed: args.seed,
            prime: args.prime,
            cache,
            format: args.format,
        })
    }

    pub fn space(&self) -> Result<Space> {
        self.space.ok_or_else(|| Error::InvalidSpace("this command needs --space n,s".into()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "space": self.space.map(|s| format!("{},{}", s.n, s.s)),
            "degree_bound": self.degree_bound,
            "seed": self.seed,
            "prime": self.prime,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_parsing() {
        let s = parse_space("4, 7").unwrap();
        assert_eq!((s.n, s.s), (4, 7));
        assert!(parse_space("4").is_err());
        assert!(parse_space("1,3").is_err());
    }

    #[test]
    fn primes() {
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(is_prime(101));
    }
}
