use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::RationalSymMatrix;
use crate::pattern::SignPattern;
use crate::subset::{cardlex_order, Order, Subset};

/// How a certificate matrix was obtained.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Random,
    #[serde(rename = "seeded-order2")]
    SeededOrder2,
    BlockDiagonal,
    Manual,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Random => "random",
            Strategy::SeededOrder2 => "seeded-order2",
            Strategy::BlockDiagonal => "block-diagonal",
            Strategy::Manual => "manual",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(Strategy::Random),
            "seeded-order2" => Ok(Strategy::SeededOrder2),
            "block-diagonal" => Ok(Strategy::BlockDiagonal),
            "manual" => Ok(Strategy::Manual),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchMeta {
    pub seed: Option<u64>,
    pub strategy: Strategy,
    pub attempts: u64,
}

/// A sign pattern together with a matrix claimed to represent it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub pattern: SignPattern,
    pub matrix: RationalSymMatrix,
    pub verified: bool,
    pub meta: SearchMeta,
}

/// Outcome of an exact certificate check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// A principal minor vanishes (first in cardlex order).
    Vanishing(Subset),
    /// A principal minor has the wrong sign (first in cardlex order).
    Mismatch(Subset),
    SizeMismatch,
}

impl Verdict {
    pub fn is_verified(self) -> bool {
        self == Verdict::Verified
    }
}

impl Certificate {
    /// An unverified certificate; call [`verify_certificate`] to check it.
    pub fn new(pattern: SignPattern, matrix: RationalSymMatrix, meta: SearchMeta) -> Self {
        Self {
            pattern,
            matrix,
            verified: false,
            meta,
        }
    }

    /// Exact check without touching `verified`.
    pub fn check(&self) -> Verdict {
        if self.pattern.n() != self.matrix.n() {
            return Verdict::SizeMismatch;
        }
        let minors = self.matrix.all_principal_minors();
        for &k in cardlex_order(self.pattern.n()) {
            match crate::exactalg::sign_of(minors.get(k)) {
                None => return Verdict::Vanishing(k),
                Some(s) if s != self.pattern.get(k) => return Verdict::Mismatch(k),
                Some(_) => {}
            }
        }
        Verdict::Verified
    }
}

/// Exact check `sign_pattern_of(matrix) = pattern`; records the result in
/// `verified`.
pub fn verify_certificate(c: &mut Certificate) -> Verdict {
    let v = c.check();
    c.verified = v.is_verified();
    v
}

/// One JSON-lines record. `key` (the canonical orbit representative) leads
/// when the record belongs to a database.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    pub n: usize,
    pub pattern: String,
    #[serde(default = "default_order")]
    pub order: String,
    pub matrix: Vec<Vec<String>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub strategy: Strategy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u64>,
    #[serde(default)]
    pub verified: bool,
}

fn default_order() -> String {
    "cardlex".into()
}

impl CertificateRecord {
    pub fn from_certificate(c: &Certificate, key: Option<&SignPattern>, order: Order) -> Self {
        Self {
            key: key.map(|k| k.to_string_in(order)),
            n: c.pattern.n(),
            pattern: c.pattern.to_string_in(order),
            order: order.name().into(),
            matrix: c.matrix.to_strings(),
            seed: c.meta.seed,
            strategy: c.meta.strategy,
            attempts: Some(c.meta.attempts),
            verified: c.verified,
        }
    }

    /// Parse back into a certificate. The stored `verified` flag is not
    /// trusted: the certificate is re-verified here.
    pub fn into_certificate(self) -> Result<(Option<SignPattern>, Certificate)> {
        let order: Order = self.order.parse()?;
        let pattern = SignPattern::parse_in(&self.pattern, order)?;
        if pattern.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                got: pattern.n(),
            });
        }
        let key = self
            .key
            .as_deref()
            .map(|k| SignPattern::parse_in(k, order))
            .transpose()?;
        let matrix = RationalSymMatrix::from_strings(&self.matrix)?;
        let mut c = Certificate::new(
            pattern,
            matrix,
            SearchMeta {
                seed: self.seed,
                strategy: self.strategy,
                attempts: self.attempts.unwrap_or(0),
            },
        );
        verify_certificate(&mut c);
        Ok((key, c))
    }
}

pub fn certificate_to_json(c: &Certificate, key: Option<&SignPattern>) -> String {
    serde_json::to_string(&CertificateRecord::from_certificate(c, key, Order::CardLex))
        .expect("record serializes")
}

pub fn certificate_from_json(text: &str) -> Result<(Option<SignPattern>, Certificate)> {
    let rec: CertificateRecord =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    rec.into_certificate()
}

/// Write one certificate per line, in the given order.
pub fn write_database<W: Write>(
    mut w: W,
    entries: &[(SignPattern, Certificate)],
) -> std::io::Result<()> {
    for (key, c) in entries {
        writeln!(w, "{}", certificate_to_json(c, Some(key)))?;
    }
    w.flush()
}

/// Read a JSON-lines database; every certificate is re-verified on load.
/// Blank lines are skipped.
pub fn read_database<R: BufRead>(r: R) -> Result<Vec<(Option<SignPattern>, Certificate)>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(certificate_from_json(&line)?);
    }
    Ok(out)
}
