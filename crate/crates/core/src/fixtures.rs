//! Reference data compiled into the library, each file pinned by its SHA-256.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::ci::{AxiomEquation, CiSpace, Imset, Permutation};
use crate::error::{Error, Result};
use crate::geometry::{HPolytope, RankTestPartition};
use crate::imset::NonNegCombination;
use crate::markov::{MarkovMove, MonomialPrime};
use crate::semigraphoid::{ClassificationRow, StatementSet};
use crate::text;

/// `(file name, contents, sha256)` for every embedded fixture.
pub const EMBEDDED: &[(&str, &str, &str)] = &[
    ("alpha5.txt", include_str!("fixtures/alpha5.txt"), "2e0ae1188e2179e90573d7e9024e0b0d06195ee2c33646fc76b1ec5c4cd58182"),
    ("axioms4.txt", include_str!("fixtures/axioms4.txt"), "8874f4c05ee9b6ba30dd4f1a05de3326f85b6ebdc2274d0ef9745834a294e248"),
    ("axioms5.txt", include_str!("fixtures/axioms5.txt"), "49ddfff9625462039ba82f7db3b68b7bc7f49581b06ed5e2db6d4d3e6a8415dc"),
    ("b5.txt", include_str!("fixtures/b5.txt"), "09e1d783018f28f6a4ce1010e739741373f24e054d3f35bb9f2f66b5ec7a2113"),
    ("beta5.txt", include_str!("fixtures/beta5.txt"), "fd9d5b53034975c8f571cdfed100539130c133ca93d1fbf5df64308f09030576"),
    ("cubics4.txt", include_str!("fixtures/cubics4.txt"), "187f49d66f0450a6becb720aacbfa49589c8d418e55e30d079861bb397972831"),
    ("g5.txt", include_str!("fixtures/g5.txt"), "3e4cbfc95ffb1ddc2c7508a44838e1a9bb6d3bb9981706bfdb4ef23901b3b71d"),
    ("gamma5_classes.txt", include_str!("fixtures/gamma5_classes.txt"), "41dbe83bcf8f1722b35ecf416f84558adb5dadc8b96a1b3d1696b10795c951a7"),
    ("gamma5_statements.txt", include_str!("fixtures/gamma5_statements.txt"), "c81ecc2e9929835eb70a78efed16193671d0c28ae85f26339e16a490a8ff1273"),
    ("m4.txt", include_str!("fixtures/m4.txt"), "2d3cca175368cd7b6a68177f2d11a062a34f8577d38eaf2986618dc849b1b5f5"),
    ("m4_partition.txt", include_str!("fixtures/m4_partition.txt"), "5b35e85be525244c27141663ddc10d54cd6d5854c4bc7bdcd18c319ea052c282"),
    ("polytope10.txt", include_str!("fixtures/polytope10.txt"), "389c55d7fe900fda0fdc2acd94268fb9ff27aa74b22c713d751112e15282360f"),
    ("primes4.txt", include_str!("fixtures/primes4.txt"), "caae2bd742e4db9d3553bc28c07cfeb4d3d28499070e55dcec4dabfe549cfff9"),
    ("quartic4.txt", include_str!("fixtures/quartic4.txt"), "1ba3bd1b21d2c3920f644d62bbfceb4f58bde05b4a42a11657864c06fc5a3809"),
    ("table4.tsv", include_str!("fixtures/table4.tsv"), "94a02faaef5c645d18bf26bda0e292eb3e42af517462405c32b6dbe5ee9995ca"),
    ("witness2b5.txt", include_str!("fixtures/witness2b5.txt"), "076ff89be7765fa6da4159315615076cddeaed8c89a7d11e9bb96d1fac47e59a"),
];

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Expands block notation such as `45|1|23`: every concatenation of an
/// ordering of each block, in lexicographic order.
pub fn expand_blocks(class: &str) -> Result<Vec<Permutation>> {
    let blocks: Vec<Vec<u8>> = class
        .trim()
        .split('|')
        .map(|b| {
            b.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad block element `{c}` in `{class}`")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for block in &blocks {
        let mut sorted = block.clone();
        sorted.sort_unstable();
        let orders: Vec<Vec<u8>> = Permutation::all(sorted.len())
            .into_iter()
            .map(|p| p.word().iter().map(|&k| sorted[k as usize - 1]).collect())
            .collect();
        words = words
            .iter()
            .flat_map(|w| {
                orders.iter().map(move |o| {
                    let mut w = w.clone();
                    w.extend(o);
                    w
                })
            })
            .collect();
    }
    words.into_iter().map(Permutation::from_word).collect()
}

/// The embedded files, owned so a caller can tamper with them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureSet {
    files: BTreeMap<String, String>,
}

impl Default for FixtureSet {
    fn default() -> Self {
        Self::embedded()
    }
}

impl FixtureSet {
    pub fn embedded() -> Self {
        FixtureSet {
            files: EMBEDDED.iter().map(|(n, t, _)| (n.to_string(), t.to_string())).collect(),
        }
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Result<&str> {
        self.files
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::Internal(format!("no fixture named {name}")))
    }

    pub fn set(&mut self, name: &str, contents: impl Into<String>) {
        self.files.insert(name.to_string(), contents.into());
    }

    /// `(name, expected digest, actual digest)` for every embedded file.
    pub fn checksums(&self) -> Vec<(&'static str, &'static str, String)> {
        EMBEDDED
            .iter()
            .map(|(name, _, sum)| {
                let actual = self.files.get(*name).map_or_else(|| "missing".to_string(), |t| sha256_hex(t));
                (*name, *sum, actual)
            })
            .collect()
    }

    /// Reads every fixture by name from `dir`; all must be present.
    pub fn load(dir: &Path) -> std::io::Result<Self> {
        let mut files = BTreeMap::new();
        for (name, _, _) in EMBEDDED {
            files.insert(name.to_string(), fs::read_to_string(dir.join(name))?);
        }
        Ok(Self { files })
    }

    pub fn export(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        for (name, text) in &self.files {
            fs::write(dir.join(name), text)?;
        }
        Ok(())
    }

    pub fn m4(&self) -> Result<StatementSet> {
        text::parse_statement_set(self.get("m4.txt")?, Some(4))
    }

    pub fn m4_partition(&self) -> Result<RankTestPartition> {
        text::parse_partition(self.get("m4_partition.txt")?)
    }

    /// Class labels in block notation, in file order.
    pub fn gamma_labels(&self) -> Result<Vec<String>> {
        Ok(self
            .get("gamma5_classes.txt")?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect())
    }

    pub fn gamma_classes(&self) -> Result<RankTestPartition> {
        let classes = self
            .gamma_labels()?
            .iter()
            .map(|l| expand_blocks(l))
            .collect::<Result<Vec<_>>>()?;
        RankTestPartition::new(5, classes)
    }

    pub fn gamma_statements(&self) -> Result<StatementSet> {
        text::parse_statement_set(self.get("gamma5_statements.txt")?, Some(5))
    }

    pub fn b5(&self) -> Result<Imset> {
        text::parse_imset(self.get("b5.txt")?, Some(5))
    }

    pub fn alpha(&self) -> Result<NonNegCombination> {
        NonNegCombination::parse_tokens(5, self.get("alpha5.txt")?)
    }

    pub fn beta(&self) -> Result<NonNegCombination> {
        NonNegCombination::parse_tokens(5, self.get("beta5.txt")?)
    }

    pub fn witness2b(&self) -> Result<NonNegCombination> {
        NonNegCombination::parse_tokens(5, self.get("witness2b5.txt")?)
    }

    pub fn g(&self) -> Result<MarkovMove> {
        text::parse_move(self.get("g5.txt")?, Some(5))
    }

    pub fn cubics4(&self) -> Result<Vec<MarkovMove>> {
        text::parse_basis(self.get("cubics4.txt")?, Some(4))
    }

    pub fn quartic4(&self) -> Result<MarkovMove> {
        text::parse_move(self.get("quartic4.txt")?, Some(4))
    }

    pub fn primes4(&self) -> Result<Vec<MonomialPrime>> {
        self.get("primes4.txt")?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                Ok(MonomialPrime {
                    variables: text::parse_statement_set(l, Some(4))?,
                })
            })
            .collect()
    }

    pub fn polytope(&self) -> Result<HPolytope> {
        text::parse_polytope(self.get("polytope10.txt")?)
    }

    /// Axiom lines, each flagged when it carries a trailing `<=` mark.
    fn axioms(&self, name: &str, n: usize) -> Result<Vec<(AxiomEquation, bool)>> {
        let space = CiSpace::get(n)?;
        self.get(name)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let (body, marked) = match l.trim_end().strip_suffix("<=") {
                    Some(b) => (b, true),
                    None => (l, false),
                };
                Ok((space.parse_axiom(body)?, marked))
            })
            .collect()
    }

    pub fn axioms4(&self) -> Result<Vec<AxiomEquation>> {
        Ok(self.axioms("axioms4.txt", 4)?.into_iter().map(|(a, _)| a).collect())
    }

    /// The four equations whose sum refutes submodularity of `m4`.
    pub fn axioms4_marked(&self) -> Result<Vec<AxiomEquation>> {
        Ok(self
            .axioms("axioms4.txt", 4)?
            .into_iter()
            .filter_map(|(a, m)| m.then_some(a))
            .collect())
    }

    pub fn axioms5(&self) -> Result<Vec<AxiomEquation>> {
        Ok(self.axioms("axioms5.txt", 5)?.into_iter().map(|(a, _)| a).collect())
    }

    pub fn table4(&self) -> Result<Vec<ClassificationRow>> {
        let bad = |l: &str| Error::Internal(format!("malformed table row `{l}`"));
        self.get("table4.tsv")?
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                let cols: Vec<&str> = l.split('\t').collect();
                if cols.len() != 5 {
                    return Err(bad(l));
                }
                let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(l));
                let signature = cols[1]
                    .trim_matches(|c| c == '(' || c == ')')
                    .split(',')
                    .map(num)
                    .collect::<Result<Vec<_>>>()?;
                Ok(ClassificationRow {
                    size: num(cols[0])?,
                    signature,
                    non_simplicial: num(cols[2])?,
                    simplicial: num(cols[3])?,
                })
            })
            .collect()
    }

    /// The printed total column of the table, which is not always the sum of
    /// the two counts.
    pub fn table4_printed_totals(&self) -> Result<Vec<usize>> {
        self.get("table4.tsv")?
            .lines()
            .skip(1)
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.rsplit('\t')
                    .next()
                    .and_then(|t| t.trim().parse().ok())
                    .ok_or_else(|| Error::Internal(format!("malformed table row `{l}`")))
            })
            .collect()
    }
}
