//! JSON certificates for fold colourings and fractional colourings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::{verify_fold_coloring, FoldColoring, Violation};
use crate::error::{Error, Result};
use crate::fractional::FractionalSolution;
use crate::graph::{Graph, VertexSet};
use crate::io::{from_graph6, to_graph6};
use crate::rational::{self, Rational};

/// `{"graph": <graph6>, "a": .., "b": .., "assignment": {"0": [..], ..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldCertificate {
    pub graph: String,
    pub a: usize,
    pub b: usize,
    pub assignment: BTreeMap<String, Vec<usize>>,
}

impl FoldCertificate {
    pub fn new(g: &Graph, c: &FoldColoring) -> Self {
        FoldCertificate {
            graph: to_graph6(g),
            a: c.a,
            b: c.b,
            assignment: c.assignment.iter().enumerate().map(|(v, s)| (v.to_string(), s.clone())).collect(),
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        from_graph6(&self.graph)
    }

    /// The colouring without validation, so that malformed certificates can
    /// still be checked and reported.
    pub fn coloring(&self, n: usize) -> Result<FoldColoring> {
        let mut assignment = vec![Vec::new(); n];
        for (key, colours) in &self.assignment {
            let v: usize = key
                .parse()
                .map_err(|_| Error::InputViolation(format!("assignment key {key:?} is not a vertex id")))?;
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            assignment[v] = colours.clone();
        }
        Ok(FoldColoring {
            a: self.a,
            b: self.b,
            assignment,
        })
    }

    /// Checks the certificate against `g`, or against its embedded graph.
    pub fn verify(&self, g: Option<&Graph>) -> Result<std::result::Result<(), Violation>> {
        let owned;
        let g = match g {
            Some(g) => g,
            None => {
                owned = self.graph()?;
                &owned
            }
        };
        Ok(verify_fold_coloring(g, &self.coloring(g.n())?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedSet {
    pub set: VertexSet,
    #[serde(with = "rational::serde_str")]
    pub weight: Rational,
}

/// `{"chi_f": "p/q", "primal": [{"set": [..], "weight": "p/q"}], "dual": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalCertificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(with = "rational::serde_str")]
    pub chi_f: Rational,
    pub primal: Vec<WeightedSet>,
    #[serde(with = "rational::serde_vec")]
    pub dual: Vec<Rational>,
}

impl FractionalCertificate {
    pub fn new(g: &Graph, sol: &FractionalSolution) -> Result<Self> {
        let dual = sol
            .dual
            .clone()
            .ok_or_else(|| Error::InputViolation("solution carries no dual certificate".into()))?;
        Ok(FractionalCertificate {
            graph: Some(to_graph6(g)),
            chi_f: sol.value.clone(),
            primal: sol
                .sets
                .iter()
                .zip(&sol.weights)
                .map(|(s, w)| WeightedSet {
                    set: s.clone(),
                    weight: w.clone(),
                })
                .collect(),
            dual,
        })
    }

    pub fn solution(&self) -> FractionalSolution {
        FractionalSolution {
            sets: self.primal.iter().map(|w| w.set.clone()).collect(),
            weights: self.primal.iter().map(|w| w.weight.clone()).collect(),
            value: self.chi_f.clone(),
            dual: Some(self.dual.clone()),
        }
    }

    /// Exact check of both certificates; `Err` carries the first failure.
    pub fn verify(&self, g: &Graph) -> std::result::Result<(), String> {
        self.solution().verify(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::find_ab_coloring;
    use crate::fractional::chi_f_exact;
    use crate::graph::{make_complete, make_cycle};
    use crate::rational::ratio;

    #[test]
    fn fold_round_trip() {
        let c5 = make_cycle(5).unwrap();
        let c = find_ab_coloring(&c5, 5, 2).unwrap().unwrap();
        let cert = FoldCertificate::new(&c5, &c);
        let text = serde_json::to_string(&cert).unwrap();
        let back: FoldCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back.verify(None).unwrap(), Ok(()));
        assert_eq!(back.coloring(5).unwrap(), c);
    }

    #[test]
    fn bad_fold() {
        let k2 = make_complete(2).unwrap();
        let text = r#"{"graph":"A_","a":1,"b":1,"assignment":{"0":[0],"1":[0]}}"#;
        let cert: FoldCertificate = serde_json::from_str(text).unwrap();
        assert_eq!(cert.verify(Some(&k2)).unwrap(), Err(Violation::SharedColor { u: 0, v: 1, color: 0 }));
    }

    #[test]
    fn fractional_round_trip() {
        let c5 = make_cycle(5).unwrap();
        let (_, sol) = chi_f_exact(&c5).unwrap();
        let cert = FractionalCertificate::new(&c5, &sol).unwrap();
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.contains(r#""chi_f":"5/2""#));
        let mut back: FractionalCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back.verify(&c5), Ok(()));
        back.chi_f = ratio(2, 1);
        assert!(back.verify(&c5).is_err());
    }
}
