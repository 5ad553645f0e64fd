use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{QloqError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn parse(c: char) -> Result<Self> {
        Ok(match c {
            'I' => Pauli::I,
            'X' => Pauli::X,
            'Y' => Pauli::Y,
            'Z' => Pauli::Z,
            other => return Err(QloqError::Parse(format!("`{other}` is not a Pauli letter"))),
        })
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> DMatrix<C64> {
        let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
        match self {
            Pauli::I => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
            Pauli::X => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            Pauli::Y => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
            Pauli::Z => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        }
    }
}

/// Coefficient times a Pauli string; letter `k` acts on qubit `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub paulis: Vec<Pauli>,
}

impl PauliTerm {
    pub fn label(&self) -> String {
        self.paulis.iter().map(|p| p.letter()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.paulis.iter().all(|&p| p == Pauli::I)
    }
}

#[derive(Deserialize)]
struct TermDoc {
    coeff: f64,
    pauli: String,
}

/// Pauli-sum Hamiltonian with terms grouped into shared measurement bases.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliHamiltonian {
    num_qubits: usize,
    terms: Vec<PauliTerm>,
    groups: Vec<Vec<usize>>,
}

impl PauliHamiltonian {
    pub fn new(terms: Vec<PauliTerm>) -> Result<Self> {
        let num_qubits = terms
            .first()
            .map(|t| t.paulis.len())
            .ok_or_else(|| QloqError::Parse("Hamiltonian has no terms".into()))?;
        if num_qubits == 0 {
            return Err(QloqError::Parse("empty Pauli string".into()));
        }
        for (i, t) in terms.iter().enumerate() {
            if t.paulis.len() != num_qubits {
                return Err(QloqError::Parse(format!(
                    "term {i} has {} letters, expected {num_qubits}",
                    t.paulis.len()
                )));
            }
            if !t.coeff.is_finite() {
                return Err(QloqError::Parse(format!("term {i} has a non-finite coefficient")));
            }
        }
        let groups = group_terms(&terms);
        Ok(PauliHamiltonian { num_qubits, terms, groups })
    }

    /// JSON lines of `{"coeff": f, "pauli": "XZIY"}`; blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let doc: TermDoc =
                serde_json::from_str(line).map_err(|e| QloqError::Parse(format!("line {}: {e}", ln + 1)))?;
            let paulis = doc
                .pauli
                .chars()
                .map(Pauli::parse)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| QloqError::Parse(format!("line {}: {e}", ln + 1)))?;
            terms.push(PauliTerm { coeff: doc.coeff, paulis });
        }
        Self::new(terms)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Measurement basis of a group: the non-identity letter per qubit.
    pub fn group_basis(&self, group: usize) -> Vec<Pauli> {
        let mut basis = vec![Pauli::I; self.num_qubits];
        for &t in &self.groups[group] {
            for (q, &p) in self.terms[t].paulis.iter().enumerate() {
                if p != Pauli::I {
                    basis[q] = p;
                }
            }
        }
        basis
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        let d = 1usize << self.num_qubits;
        let mut h = DMatrix::zeros(d, d);
        for t in &self.terms {
            let mut m = DMatrix::identity(1, 1);
            for p in &t.paulis {
                m = m.kronecker(&p.matrix());
            }
            h += m * C64::new(t.coeff, 0.0);
        }
        h
    }

    /// Smallest eigenvalue by dense diagonalisation.
    pub fn ground_energy(&self) -> Result<f64> {
        if self.num_qubits > 10 {
            return Err(QloqError::Unsupported("dense diagonalisation limited to 10 qubits".into()));
        }
        let eig = self.matrix().symmetric_eigen();
        Ok(eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min))
    }
}

fn compatible(basis: &[Pauli], t: &PauliTerm) -> bool {
    basis.iter().zip(&t.paulis).all(|(&b, &p)| b == Pauli::I || p == Pauli::I || b == p)
}

/// First-fit grouping by qubit-wise commutation.
fn group_terms(terms: &[PauliTerm]) -> Vec<Vec<usize>> {
    let mut groups: Vec<(Vec<Pauli>, Vec<usize>)> = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        if let Some((basis, members)) = groups.iter_mut().find(|(b, _)| compatible(b, t)) {
            for (b, &p) in basis.iter_mut().zip(&t.paulis) {
                if p != Pauli::I {
                    *b = p;
                }
            }
            members.push(i);
        } else {
            groups.push((t.paulis.clone(), vec![i]));
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}
