use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use superquiver::cli;
use superquiver::lie::{check_gl_invariant, check_weight, is_sl_invariant, weight_of, Weight};
use superquiver::oracle::{self, component_report, OracleOptions, DEFAULT_CAP};
use superquiver::quiver::{self as q, MultiDegree, ParityVector, SuperDim, SuperDimVector};
use superquiver::ring::text::{format_polynomial, parse_polynomial};
use superquiver::semi::strace_invariant;
use superquiver::space;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sdims(d: Vec<(u32, u32)>) -> SuperDimVector {
    SuperDimVector(d.into_iter().map(|(p, q)| SuperDim::new(p, q)).collect())
}

#[pyclass(module = "superquiver")]
#[derive(Clone)]
struct Quiver(q::Quiver);

#[pymethods]
impl Quiver {
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> PyResult<Self> {
        q::Quiver::new(vertices, edges).map(Quiver).map_err(err)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.0.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        self.0
            .edges()
            .iter()
            .map(|e| {
                let v = |a| self.0.vertex_id(a).to_string();
                (e.id.clone(), v(e.tail), v(e.head))
            })
            .collect()
    }

    /// Closed paths up to rotation, as lists of edge ids.
    fn closed_paths(&self, max_len: usize) -> Vec<Vec<String>> {
        q::enumerate_closed_paths(&self.0, max_len)
            .iter()
            .map(|p| p.edges().iter().map(|&e| self.0.edge(e).id.clone()).collect())
            .collect()
    }

    fn ringel(&self, alpha: Vec<(u32, u32)>, beta: Vec<(u32, u32)>) -> PyResult<i64> {
        q::ringel_form(&self.0, &sdims(alpha), &sdims(beta)).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Quiver({} vertices, {} edges)",
            self.0.num_vertices(),
            self.0.num_edges()
        )
    }
}

#[pyclass(module = "superquiver")]
#[derive(Clone)]
struct Polynomial {
    space: space::RepSpace,
    inner: superquiver::ring::Polynomial,
}

impl Polynomial {
    fn with(&self, inner: superquiver::ring::Polynomial) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            inner,
        }
    }

    fn same_space(&self, other: &Polynomial) -> PyResult<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(err("polynomials live on different spaces"))
        }
    }
}

#[pymethods]
impl Polynomial {
    fn __str__(&self) -> String {
        format_polynomial(&self.inner, &self.space)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.__str__())
    }

    fn __add__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        self.same_space(other)?;
        Ok(self.with(&self.inner + &other.inner))
    }

    fn __sub__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        self.same_space(other)?;
        Ok(self.with(&self.inner - &other.inner))
    }

    fn __mul__(&self, other: &Polynomial) -> PyResult<Polynomial> {
        self.same_space(other)?;
        Ok(self.with(&self.inner * &other.inner))
    }

    fn __neg__(&self) -> Polynomial {
        self.with(-&self.inner)
    }

    fn __eq__(&self, other: &Polynomial) -> bool {
        self.space == other.space && self.inner == other.inner
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    /// Homogeneous components keyed by multidegree.
    fn components(&self) -> Vec<(Vec<u32>, Polynomial)> {
        self.inner
            .components(self.space.num_edges())
            .into_iter()
            .map(|(n, f)| (n.0, self.with(f)))
            .collect()
    }
}

#[pyclass(module = "superquiver")]
struct RepSpace(space::RepSpace);

impl RepSpace {
    fn wrap(&self, inner: superquiver::ring::Polynomial) -> Polynomial {
        Polynomial {
            space: self.0.clone(),
            inner,
        }
    }

    fn own(&self, f: &Polynomial) -> PyResult<()> {
        if f.space == self.0 {
            Ok(())
        } else {
            Err(err("polynomial belongs to another space"))
        }
    }

    fn degree(&self, n: Vec<u32>) -> PyResult<MultiDegree> {
        if n.len() != self.0.num_edges() {
            return Err(err(format!("expected {} degrees", self.0.num_edges())));
        }
        Ok(MultiDegree(n))
    }
}

#[pymethods]
impl RepSpace {
    #[new]
    #[pyo3(signature = (quiver, sdims, parity=None))]
    fn new(quiver: &Quiver, sdims: Vec<(u32, u32)>, parity: Option<Vec<u8>>) -> PyResult<Self> {
        let parity = match parity {
            Some(bits) => ParityVector::from_bits(&bits).map_err(err)?,
            None => ParityVector::zero(&quiver.0),
        };
        space::RepSpace::new(quiver.0.clone(), self::sdims(sdims), parity)
            .map(RepSpace)
            .map_err(err)
    }

    #[getter]
    fn quiver(&self) -> Quiver {
        Quiver(self.0.quiver().clone())
    }

    fn parse(&self, text: &str) -> PyResult<Polynomial> {
        parse_polynomial(text, &self.0).map(|p| self.wrap(p)).map_err(err)
    }

    /// Supertrace of the closed path given by edge ids.
    fn strace(&self, path: Vec<String>) -> PyResult<Polynomial> {
        let ids: Vec<&str> = path.iter().map(String::as_str).collect();
        let p = q::Path::from_ids(self.0.quiver(), &ids).map_err(err)?;
        strace_invariant(&self.0, &p).map(|f| self.wrap(f)).map_err(err)
    }

    fn det(&self, edge: &str) -> PyResult<Polynomial> {
        let e = self.0.quiver().edge_by_id(edge).map_err(err)?;
        let m = self.0.generic_matrix(e).map_err(err)?;
        m.determinant().map(|f| self.wrap(f)).map_err(err)
    }

    fn is_invariant(&self, f: &Polynomial) -> PyResult<bool> {
        self.own(f)?;
        Ok(check_gl_invariant(&self.0, &f.inner).passed())
    }

    fn is_semi_invariant(&self, f: &Polynomial) -> PyResult<bool> {
        self.own(f)?;
        Ok(is_sl_invariant(&self.0, &f.inner))
    }

    fn has_weight(&self, f: &Polynomial, weight: Vec<i64>) -> PyResult<bool> {
        self.own(f)?;
        check_weight(&self.0, &f.inner, &Weight(weight))
            .map(|v| v.passed())
            .map_err(err)
    }

    /// The weight of a semi-invariant, or None.
    fn weight(&self, f: &Polynomial) -> PyResult<Option<Vec<i64>>> {
        self.own(f)?;
        weight_of(&self.0, &f.inner).map(|w| w.map(|w| w.0)).map_err(err)
    }

    #[pyo3(signature = (n, cap=DEFAULT_CAP))]
    fn semi_invariant_dim(&self, n: Vec<u32>, cap: usize) -> PyResult<usize> {
        oracle::semi_invariant_dim(&self.0, &self.degree(n)?, cap).map_err(err)
    }

    #[pyo3(signature = (n, cap=DEFAULT_CAP))]
    fn invariant_dim(&self, n: Vec<u32>, cap: usize) -> PyResult<usize> {
        oracle::invariant_dim(&self.0, &self.degree(n)?, cap).map_err(err)
    }

    /// One oracle line, e.g. `n=(2) basis=8 ssi=2 si=2 span=2 PASS`.
    #[pyo3(signature = (n, compare_max_len=None, cap=DEFAULT_CAP))]
    fn oracle(&self, n: Vec<u32>, compare_max_len: Option<usize>, cap: usize) -> PyResult<String> {
        let opts = OracleOptions {
            cap,
            compare_max_len,
        };
        component_report(&self.0, &self.degree(n)?, &opts)
            .map(|r| r.to_string())
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        let q = self.0.quiver();
        let dims: Vec<String> = (0..q.num_vertices())
            .map(|a| format!("{}={}", q.vertex_id(a), self.0.sdim(a)))
            .collect();
        format!("RepSpace({})", dims.join(", "))
    }
}

/// Runs a job file given as text; returns the output lines and exit code.
#[pyfunction]
#[pyo3(signature = (text, strict=false, cap=DEFAULT_CAP))]
fn run_job(text: &str, strict: bool, cap: usize) -> PyResult<(Vec<String>, i32)> {
    let job = cli::parse_job(text).map_err(err)?;
    let opts = cli::RunOptions {
        strict,
        cap,
        ..Default::default()
    };
    let out = cli::run(&job, &opts);
    let code = out.exit_code(strict);
    Ok((out.lines, code))
}

/// Dimensions of Hom and Ext¹ between two representations given in the
/// rep-file format.
#[pyfunction]
fn hom_ext(quiver: &Quiver, v: &str, w: &str) -> PyResult<(usize, usize)> {
    let v = cli::parse_rep(v, &quiver.0).map_err(err)?;
    let w = cli::parse_rep(w, &quiver.0).map_err(err)?;
    oracle::hom_ext_dims(&quiver.0, &v, &w).map_err(err)
}

#[pymodule]
#[pyo3(name = "superquiver")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Quiver>()?;
    m.add_class::<RepSpace>()?;
    m.add_class::<Polynomial>()?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add_function(wrap_pyfunction!(hom_ext, m)?)?;
    Ok(())
}
