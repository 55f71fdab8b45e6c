//! The joint Tanner graph of two syndrome-coded sources.
//!
//! Node layout is fixed so message traces are comparable across runs:
//!
//! * variables: `u1[0..n]`, then `u2[0..n]`, then (explicit form only) `z[0..n]`;
//! * checks: code-1 rows `0..m1`, code-2 rows `0..m2`, then one correlation
//!   check per bit position.
//!
//! Correlation check `i` enforces `u1[i] ^ u2[i] ^ z[i] = 0`. In the explicit
//! form `z[i]` is a degree-1 variable whose prior is the hidden LLR. In the
//! folded form the `z` nodes are gone and each correlation check carries the
//! hidden LLR as a parameter instead; since a degree-1 variable always sends
//! its prior, both forms exchange identical messages on the source edges.
//!
//! Edges are stored check-major: the edges of check `c` occupy a contiguous
//! range, in the order of the check's neighbour list.

use std::fmt::{self, Write as _};
use std::ops::Range;

use crate::code::{SparseParityMatrix, Syndrome};
use crate::correlation::{CorrelationModel, Llr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphForm {
    /// Hidden `z` variables are graph nodes.
    ExplicitZ,
    /// Hidden variables folded into the correlation checks.
    FoldedZ,
}

impl GraphForm {
    fn name(self) -> &'static str {
        match self {
            GraphForm::ExplicitZ => "explicit-Z",
            GraphForm::FoldedZ => "folded-Z",
        }
    }
}

impl fmt::Display for GraphForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    U1,
    U2,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRole {
    Code1,
    Code2,
    Correlation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarNode {
    pub role: VarRole,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckNode {
    pub role: CheckRole,
    /// Row of the code matrix, or bit position for correlation checks.
    pub index: usize,
    /// Hidden LLR carried by a folded correlation check.
    pub param: Option<Llr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointTannerGraph {
    form: GraphForm,
    n: usize,
    m1: usize,
    m2: usize,
    hidden: Llr,
    vars: Vec<VarNode>,
    priors: Vec<f64>,
    checks: Vec<CheckNode>,
    check_start: Vec<usize>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    var_edges: Vec<Vec<usize>>,
}

impl JointTannerGraph {
    /// Joins the Tanner graphs of `h1` and `h2` with per-position
    /// correlation checks for `model`.
    pub fn build(
        h1: &SparseParityMatrix,
        h2: &SparseParityMatrix,
        model: &CorrelationModel,
        form: GraphForm,
    ) -> Result<Self> {
        Self::build_with_llr(h1, h2, model.hidden_llr(), form)
    }

    /// As [`build`](Self::build) with an explicit hidden LLR. Passing
    /// [`Llr::ZERO`] makes the correlation checks carry no information.
    pub fn build_with_llr(
        h1: &SparseParityMatrix,
        h2: &SparseParityMatrix,
        hidden: Llr,
        form: GraphForm,
    ) -> Result<Self> {
        if h1.n() != h2.n() {
            return Err(Error::LengthMismatch {
                what: "code 2 block length",
                expected: h1.n(),
                found: h2.n(),
            });
        }
        if h1.n() == 0 {
            return Err(Error::InvalidParameter(
                "block length must be positive".into(),
            ));
        }
        Ok(Self::assemble(h1.n(), h1.rows(), h2.rows(), hidden, form))
    }

    fn assemble(
        n: usize,
        rows1: &[Vec<usize>],
        rows2: &[Vec<usize>],
        hidden: Llr,
        form: GraphForm,
    ) -> Self {
        let explicit = form == GraphForm::ExplicitZ;
        let mut vars = Vec::with_capacity(3 * n);
        for role in [VarRole::U1, VarRole::U2, VarRole::Z] {
            if role == VarRole::Z && !explicit {
                break;
            }
            vars.extend((0..n).map(|index| VarNode { role, index }));
        }
        let priors = vars
            .iter()
            .map(|v| {
                if v.role == VarRole::Z {
                    hidden.value()
                } else {
                    0.0
                }
            })
            .collect();

        let mut checks = Vec::with_capacity(rows1.len() + rows2.len() + n);
        let mut check_start = vec![0];
        let mut edge_var = Vec::new();
        let mut push = |node: CheckNode, neighbours: &mut dyn Iterator<Item = usize>| {
            checks.push(node);
            edge_var.extend(neighbours);
            check_start.push(edge_var.len());
        };
        for (k, row) in rows1.iter().enumerate() {
            let node = CheckNode {
                role: CheckRole::Code1,
                index: k,
                param: None,
            };
            push(node, &mut row.iter().copied());
        }
        for (k, row) in rows2.iter().enumerate() {
            let node = CheckNode {
                role: CheckRole::Code2,
                index: k,
                param: None,
            };
            push(node, &mut row.iter().map(|&i| n + i));
        }
        for i in 0..n {
            let (param, hidden_var) = if explicit {
                (None, Some(2 * n + i))
            } else {
                (Some(hidden), None)
            };
            let node = CheckNode {
                role: CheckRole::Correlation,
                index: i,
                param,
            };
            push(node, &mut [i, n + i].into_iter().chain(hidden_var));
        }

        let mut var_edges = vec![Vec::new(); vars.len()];
        let mut edge_check = Vec::with_capacity(edge_var.len());
        for c in 0..checks.len() {
            for e in check_start[c]..check_start[c + 1] {
                var_edges[edge_var[e]].push(e);
                edge_check.push(c);
            }
        }
        JointTannerGraph {
            form,
            n,
            m1: rows1.len(),
            m2: rows2.len(),
            hidden,
            vars,
            priors,
            checks,
            check_start,
            edge_var,
            edge_check,
            var_edges,
        }
    }

    /// Eliminates the degree-1 hidden variables into their correlation checks.
    pub fn fold_hidden(&self) -> Result<Self> {
        if self.form != GraphForm::ExplicitZ {
            return Err(Error::WrongForm {
                expected: GraphForm::ExplicitZ.name(),
                found: self.form.name(),
            });
        }
        let n = self.n;
        let rows1: Vec<Vec<usize>> = (0..self.m1)
            .map(|c| self.check_neighbours(c).to_vec())
            .collect();
        let rows2: Vec<Vec<usize>> = (self.m1..self.m1 + self.m2)
            .map(|c| self.check_neighbours(c).iter().map(|v| v - n).collect())
            .collect();
        Ok(Self::assemble(
            n,
            &rows1,
            &rows2,
            self.hidden,
            GraphForm::FoldedZ,
        ))
    }

    pub fn form(&self) -> GraphForm {
        self.form
    }

    /// Source block length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn hidden_llr(&self) -> Llr {
        self.hidden
    }

    pub fn vars(&self) -> &[VarNode] {
        &self.vars
    }

    pub fn checks(&self) -> &[CheckNode] {
        &self.checks
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    pub fn check_edges(&self, check: usize) -> Range<usize> {
        self.check_start[check]..self.check_start[check + 1]
    }

    pub fn check_neighbours(&self, check: usize) -> &[usize] {
        &self.edge_var[self.check_edges(check)]
    }

    pub fn var_edges(&self, var: usize) -> &[usize] {
        &self.var_edges[var]
    }

    pub fn edge_var(&self, edge: usize) -> usize {
        self.edge_var[edge]
    }

    pub fn edge_check(&self, edge: usize) -> usize {
        self.edge_check[edge]
    }

    pub fn u1_var(&self, i: usize) -> usize {
        i
    }

    pub fn u2_var(&self, i: usize) -> usize {
        self.n + i
    }

    /// Hidden variable of position `i`, present only in the explicit form.
    pub fn z_var(&self, i: usize) -> Option<usize> {
        (self.form == GraphForm::ExplicitZ).then_some(2 * self.n + i)
    }

    pub fn correlation_check(&self, i: usize) -> usize {
        self.m1 + self.m2 + i
    }

    /// Constant multiplier of a check's tanh product: `tanh(param / 2)` for a
    /// folded correlation check, 1 otherwise.
    pub fn check_factor(&self, check: usize) -> f64 {
        self.checks[check]
            .param
            .map_or(1.0, |llr| (llr.value() / 2.0).tanh())
    }

    /// Target parity of every check given the two syndromes.
    pub fn parities(&self, s1: &Syndrome, s2: &Syndrome) -> Result<Vec<u8>> {
        if s1.len() != self.m1 {
            return Err(Error::LengthMismatch {
                what: "syndrome 1",
                expected: self.m1,
                found: s1.len(),
            });
        }
        if s2.len() != self.m2 {
            return Err(Error::LengthMismatch {
                what: "syndrome 2",
                expected: self.m2,
                found: s2.len(),
            });
        }
        let mut parity = Vec::with_capacity(self.checks.len());
        parity.extend_from_slice(s1.bits());
        parity.extend_from_slice(s2.bits());
        parity.resize(self.checks.len(), 0);
        Ok(parity)
    }

    /// Verifies the per-role structural invariants.
    pub fn check_structure(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParameter(msg));
        let explicit = self.form == GraphForm::ExplicitZ;
        let expected_vars = if explicit { 3 * self.n } else { 2 * self.n };
        if self.vars.len() != expected_vars || self.checks.len() != self.m1 + self.m2 + self.n {
            return fail("node counts do not match the form".into());
        }
        for (c, node) in self.checks.iter().enumerate() {
            let nb = self.check_neighbours(c);
            let roles: Vec<VarRole> = nb.iter().map(|&v| self.vars[v].role).collect();
            let ok = match node.role {
                CheckRole::Code1 => roles.iter().all(|&r| r == VarRole::U1),
                CheckRole::Code2 => roles.iter().all(|&r| r == VarRole::U2),
                CheckRole::Correlation => {
                    let i = node.index;
                    let mut want = vec![self.u1_var(i), self.u2_var(i)];
                    want.extend(self.z_var(i));
                    nb == want.as_slice() && node.param.is_some() != explicit
                }
            };
            if !ok {
                return fail(format!(
                    "check {c} ({:?} {}) has wrong neighbours",
                    node.role, node.index
                ));
            }
        }
        for (v, node) in self.vars.iter().enumerate() {
            if node.role == VarRole::Z && self.var_edges[v].len() != 1 {
                return fail(format!(
                    "hidden variable {} has degree {}",
                    node.index,
                    self.var_edges[v].len()
                ));
            }
        }
        Ok(())
    }

    /// Plain-text adjacency listing: one `V`/`C` line per node in id order,
    /// then one `E <var-id> <check-id>` line per edge sorted by (var, check).
    pub fn to_debug_text(&self) -> String {
        let mut out = String::new();
        for node in &self.vars {
            let _ = match node.role {
                VarRole::U1 => writeln!(out, "V u1 {}", node.index),
                VarRole::U2 => writeln!(out, "V u2 {}", node.index),
                VarRole::Z => writeln!(out, "V z {} prior={}", node.index, self.hidden.value()),
            };
        }
        for node in &self.checks {
            let _ = match (node.role, node.param) {
                (CheckRole::Code1, _) => writeln!(out, "C code1 {}", node.index),
                (CheckRole::Code2, _) => writeln!(out, "C code2 {}", node.index),
                (CheckRole::Correlation, Some(p)) => {
                    writeln!(out, "C corr {} parity=0 param={}", node.index, p.value())
                }
                (CheckRole::Correlation, None) => {
                    writeln!(out, "C corr {} parity=0 param=none", node.index)
                }
            };
        }
        let mut edges: Vec<(usize, usize)> = (0..self.num_edges())
            .map(|e| (self.edge_var[e], self.edge_check[e]))
            .collect();
        edges.sort_unstable();
        for (v, c) in edges {
            let _ = writeln!(out, "E {v} {c}");
        }
        out
    }
}
