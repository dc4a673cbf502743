use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{parse_formula, Formula, Model, RtriposError, CARRIER_SORT};
use crate::opca::{ElemSet, FiniteOpca, Phi};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemaKind {
    Mct,
    Up,
    Intersection,
}

/// Data for one schema instance. `X` and `Y` are base relations: their
/// predicates take the full carrier on related tuples and `∅` elsewhere.
/// Each fibre must be downward closed in its first (carrier) coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SchemaData {
    /// `Y ⊆ A×Z`, `X ⊆ A×A×Z` as membership tables in mixed radix.
    Mct { z: usize, y: Vec<bool>, x: Vec<bool> },
    /// `g: Y → Z`, `X ⊆ A×Y`.
    Up { y: usize, z: usize, g: Vec<usize>, x: Vec<bool> },
    /// A downset `U`.
    Intersection { u: ElemSet },
}

impl SchemaData {
    pub fn kind(&self) -> SchemaKind {
        match self {
            SchemaData::Mct { .. } => SchemaKind::Mct,
            SchemaData::Up { .. } => SchemaKind::Up,
            SchemaData::Intersection { .. } => SchemaKind::Intersection,
        }
    }

    /// Random data for a carrier of `n` elements.
    pub fn random(kind: SchemaKind, opca: &FiniteOpca, rng: &mut impl Rng) -> SchemaData {
        let n = opca.len();
        match kind {
            SchemaKind::Mct => {
                let z = rng.gen_range(1..=2);
                SchemaData::Mct {
                    z,
                    y: random_fibres(opca, z, rng),
                    x: random_fibres(opca, n * z, rng),
                }
            }
            SchemaKind::Up => {
                let y = rng.gen_range(1..=3);
                let z = rng.gen_range(1..=2);
                SchemaData::Up {
                    y,
                    z,
                    g: (0..y).map(|_| rng.gen_range(0..z)).collect(),
                    x: random_fibres(opca, y, rng),
                }
            }
            SchemaKind::Intersection => {
                let ds = opca.downsets();
                SchemaData::Intersection {
                    u: ds[rng.gen_range(0..ds.len())],
                }
            }
        }
    }
}

/// A table over `A × F` whose fibres are random downsets of `A`.
fn random_fibres(opca: &FiniteOpca, fibres: usize, rng: &mut impl Rng) -> Vec<bool> {
    let ds = opca.downsets();
    let chosen: Vec<ElemSet> = (0..fibres).map(|_| ds[rng.gen_range(0..ds.len())]).collect();
    (0..opca.len())
        .flat_map(|a| chosen.iter().map(move |d| d.contains(a)))
        .collect()
}

/// Checks that every fibre of a table over `A × F` is a downset of `A`.
fn check_fibres(opca: &FiniteOpca, name: &str, table: &[bool], fibres: usize) -> Result<(), RtriposError> {
    for f in 0..fibres {
        let d = ElemSet::from_elems(opca.elems().filter(|&a| table[a * fibres + f]));
        if !opca.is_downset(d) {
            return Err(RtriposError::NotDownset {
                name: format!("{name} (fibre {})", f + 1),
                set: d.display(opca.names()).to_string(),
            });
        }
    }
    Ok(())
}

/// Seeded stream of random instances.
pub fn random_instances(kind: SchemaKind, opca: &FiniteOpca, count: usize, seed: u64) -> Vec<SchemaData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| SchemaData::random(kind, opca, &mut rng)).collect()
}

pub const MCT: &str = "forall z:Z. (forall y:A. Y(y, z) /\\ C(y) -> exists x:A. X(x, y, z) /\\ C(x)) \
    -> exists w:A. C(w) /\\ forall y:A. Y(y, z) -> D(w, y) /\\ X(app(w, y), y, z)";

pub const UP: &str = "forall z:Z. (forall y:Y. g(y) = z -> exists x:A. X(x, y) /\\ C(x)) \
    -> exists x:A. C(x) /\\ forall y:Y. g(y) = z -> X(x, y)";

pub const INTERSECTION: &str = "exists x:A. C(x) /\\ U(x)";

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn check_table(t: &[bool], expected: usize, name: &str) -> Result<(), RtriposError> {
    if t.len() == expected {
        Ok(())
    } else {
        Err(RtriposError::Arity {
            name: name.into(),
            expected,
            found: t.len(),
        })
    }
}

/// The schema sentence together with a model holding its data.
pub fn schema_instance(opca: &FiniteOpca, phi: &Phi, data: &SchemaData) -> Result<(Model, Formula), RtriposError> {
    let mut m = Model::new(opca.clone()).with_phi(phi.clone());
    let a = m.sort_id(CARRIER_SORT)?;
    let n = opca.len();
    let text = match data {
        SchemaData::Mct { z, y, x } => {
            check_table(y, n * z, "Y")?;
            check_table(x, n * n * z, "X")?;
            check_fibres(opca, "Y", y, *z)?;
            check_fibres(opca, "X", x, n * z)?;
            let zs = m.add_sort("Z", names("z", *z))?;
            m.add_relation("Y", vec![a, zs], |t| y[t[0] * z + t[1]])?;
            m.add_relation("X", vec![a, a, zs], |t| x[(t[0] * n + t[1]) * z + t[2]])?;
            MCT
        }
        SchemaData::Up { y, z, g, x } => {
            check_table(x, n * y, "X")?;
            if g.len() != *y || g.iter().any(|&v| v >= *z) {
                return Err(RtriposError::SortMismatch {
                    expected: format!("a map from {y} to {z} elements"),
                    found: format!("{g:?}"),
                    context: "g".into(),
                });
            }
            check_fibres(opca, "X", x, *y)?;
            let ys = m.add_sort("Y", names("y", *y))?;
            let zs = m.add_sort("Z", names("z", *z))?;
            m.add_fun("g", vec![ys], zs, g.iter().map(|&v| Some(v)).collect())?;
            m.add_relation("X", vec![a, ys], |t| x[t[0] * y + t[1]])?;
            UP
        }
        SchemaData::Intersection { u } => {
            if !opca.is_downset(*u) {
                return Err(RtriposError::NotDownset {
                    name: "U".into(),
                    set: u.display(opca.names()).to_string(),
                });
            }
            m.add_relation("U", vec![a], |t| u.contains(t[0]))?;
            INTERSECTION
        }
    };
    Ok((m, parse_formula(text)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opca::builtin;
    use crate::rtripos::is_valid;

    #[test]
    fn intersection_full_is_valid() {
        let a = builtin("s2").unwrap();
        let (m, f) = schema_instance(&a, &Phi::Inhabited, &SchemaData::Intersection { u: a.carrier() }).unwrap();
        assert!(is_valid(&m, &f).unwrap());
        let (m, f) = schema_instance(&a, &Phi::Inhabited, &SchemaData::Intersection { u: ElemSet::EMPTY }).unwrap();
        assert!(!is_valid(&m, &f).unwrap());
    }

    #[test]
    fn intersection_rejects_non_downsets() {
        let a = builtin("s2").unwrap();
        let r = schema_instance(&a, &Phi::Inhabited, &SchemaData::Intersection { u: ElemSet(2) });
        assert!(r.is_err());
    }

    #[test]
    fn up_with_constant_map_is_valid() {
        let a = builtin("s2").unwrap();
        let data = SchemaData::Up {
            y: 2,
            z: 1,
            g: vec![0, 0],
            // X(·, y1) = {e}, X(·, y2) = {e, t}.
            x: vec![true, true, false, true],
        };
        let (m, f) = schema_instance(&a, &Phi::Inhabited, &data).unwrap();
        assert!(is_valid(&m, &f).unwrap());
    }

    #[test]
    fn fibres_must_be_downsets() {
        let a = builtin("s2").unwrap();
        let data = SchemaData::Up {
            y: 2,
            z: 1,
            g: vec![0, 0],
            x: vec![true, false, false, true],
        };
        assert!(matches!(
            schema_instance(&a, &Phi::Inhabited, &data),
            Err(RtriposError::NotDownset { .. })
        ));
    }

    #[test]
    fn mct_application_graph_is_valid() {
        // Z singleton, Y all of A, X the down-closed graph of application.
        let a = builtin("s2").unwrap();
        let n = a.len();
        let mut x = vec![false; n * n];
        for w in a.elems() {
            for y in a.elems() {
                if let Some(v) = a.app(w, y) {
                    for u in a.down(v).iter() {
                        x[u * n + y] = true;
                    }
                }
            }
        }
        let data = SchemaData::Mct { z: 1, y: vec![true; n], x };
        let (m, f) = schema_instance(&a, &Phi::Inhabited, &data).unwrap();
        assert!(is_valid(&m, &f).unwrap());
    }

    #[test]
    fn generation_is_seeded() {
        let a = builtin("s3").unwrap();
        assert_eq!(
            random_instances(SchemaKind::Mct, &a, 5, 7),
            random_instances(SchemaKind::Mct, &a, 5, 7)
        );
    }
}
