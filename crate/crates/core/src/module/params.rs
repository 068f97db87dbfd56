use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ModuleError;
use crate::field::{Elem, Field};

/// Full exterior algebra `A = E(e1, e2)` or the quotient `B = A / (e1 e2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    A,
    B,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "A",
            Variant::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "e1")]
    E1,
    #[serde(rename = "e2")]
    E2,
}

impl Generator {
    pub const BOTH: [Generator; 2] = [Generator::E1, Generator::E2];
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::E1 => "e1",
            Generator::E2 => "e2",
        })
    }
}

impl std::str::FromStr for Generator {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "e1" => Ok(Generator::E1),
            "e2" => Ok(Generator::E2),
            other => Err(format!("unknown operator '{other}' (expected e1 or e2)")),
        }
    }
}

/// Ground field, generator degrees `0 < |e1| < |e2|`, and algebra variant.
///
/// In variant A the generators graded-commute: `e2 e1 = σ e1 e2` with
/// `σ = (-1)^(|e1||e2|)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct AlgebraParams {
    field: Field,
    deg_e1: i64,
    deg_e2: i64,
    variant: Variant,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    field: u64,
    deg_e1: i64,
    deg_e2: i64,
    variant: Variant,
}

impl TryFrom<RawParams> for AlgebraParams {
    type Error = ModuleError;
    fn try_from(r: RawParams) -> Result<Self, ModuleError> {
        let field = Field::new(r.field)?;
        AlgebraParams::new(field, r.deg_e1, r.deg_e2, r.variant)
    }
}

impl From<AlgebraParams> for RawParams {
    fn from(p: AlgebraParams) -> Self {
        RawParams { field: p.field.characteristic(), deg_e1: p.deg_e1, deg_e2: p.deg_e2, variant: p.variant }
    }
}

impl Default for AlgebraParams {
    /// `F_2`, `|e1| = 1`, `|e2| = 3`, variant B (the Milnor primitives `Q0`, `Q1`).
    fn default() -> Self {
        AlgebraParams { field: Field::Prime(2), deg_e1: 1, deg_e2: 3, variant: Variant::B }
    }
}

impl AlgebraParams {
    pub fn new(field: Field, deg_e1: i64, deg_e2: i64, variant: Variant) -> Result<Self, ModuleError> {
        if !(0 < deg_e1 && deg_e1 < deg_e2) {
            return Err(ModuleError::BadDegrees { deg_e1, deg_e2 });
        }
        Ok(AlgebraParams { field, deg_e1, deg_e2, variant })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn deg_e1(&self) -> i64 {
        self.deg_e1
    }

    pub fn deg_e2(&self) -> i64 {
        self.deg_e2
    }

    pub fn degree(&self, g: Generator) -> i64 {
        match g {
            Generator::E1 => self.deg_e1,
            Generator::E2 => self.deg_e2,
        }
    }

    /// `|e2| - |e1|`: the spacing between consecutive bottoms of a flash.
    pub fn gap(&self) -> i64 {
        self.deg_e2 - self.deg_e1
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn sigma(&self) -> Elem {
        self.field.sign(self.deg_e1 * self.deg_e2)
    }

    pub fn with_variant(&self, variant: Variant) -> AlgebraParams {
        AlgebraParams { variant, ..self.clone() }
    }
}

/// Degree-indexed dimensions with finite support. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        GradedDims(BTreeMap::new())
    }

    pub fn get(&self, d: i64) -> usize {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn set(&mut self, d: i64, n: usize) {
        if n == 0 {
            self.0.remove(&d);
        } else {
            self.0.insert(d, n);
        }
    }

    pub fn add(&mut self, d: i64, n: usize) {
        let cur = self.get(d);
        self.set(d, cur + n);
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &n)| (d, n))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.0.keys().next_back().copied()
    }

    pub fn shifted(&self, by: i64) -> GradedDims {
        GradedDims(self.0.iter().map(|(&d, &n)| (d + by, n)).collect())
    }
}

impl FromIterator<(i64, usize)> for GradedDims {
    fn from_iter<I: IntoIterator<Item = (i64, usize)>>(iter: I) -> Self {
        let mut g = GradedDims::new();
        for (d, n) in iter {
            g.add(d, n);
        }
        g
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(d, n)| format!("{d}:{n}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_constraint() {
        let f = Field::Prime(2);
        assert!(AlgebraParams::new(f, 1, 3, Variant::B).is_ok());
        assert!(AlgebraParams::new(f, 3, 3, Variant::B).is_err());
        assert!(AlgebraParams::new(f, 0, 3, Variant::B).is_err());
    }

    #[test]
    fn sigma_values() {
        let p = AlgebraParams::new(Field::Prime(5), 1, 3, Variant::A).unwrap();
        assert_eq!(p.sigma(), Field::Prime(5).from_i64(-1));
        let p = AlgebraParams::new(Field::Prime(5), 2, 5, Variant::A).unwrap();
        assert_eq!(p.sigma(), Field::Prime(5).one());
        assert_eq!(AlgebraParams::default().sigma(), Field::Prime(2).one());
    }

    #[test]
    fn graded_dims_drop_zeros() {
        let mut g: GradedDims = [(0, 1), (3, 0), (0, 2)].into_iter().collect();
        assert_eq!(g.get(0), 3);
        assert_eq!(g.degrees().collect::<Vec<_>>(), vec![0]);
        g.set(0, 0);
        assert!(g.is_empty());
    }
}
