use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Flattening;
use crate::error::{Error, Result};
use crate::exactmath::{int, is_rational_square, rational_sqrt, serde_rational, Matrix, QuadExt, Rational};
use crate::polyring::{Ideal, Poly, PolyRing};
use crate::torus::{find_polarization, ns_rank, PeriodMatrix, Polarization, Validity};

/// A point of a zero-dimensional fiber, in homogeneous coordinates
/// `(t_0 : … : t_{g²})` normalized so the chart variable is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoint {
    pub coords: Vec<QuadExt>,
    pub tau: PeriodMatrix,
    /// Discriminant of the quadratic the point was solved from; `None` for
    /// a rational point of a degree-1 fiber.
    pub discriminant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPoint {
    pub tau: PeriodMatrix,
    pub validity: Validity,
    pub ns_rank: usize,
    /// Only computed on valid tori.
    pub polarization: Option<Polarization>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub empty: bool,
    /// Projective dimension; −1 when empty.
    pub dim: i64,
    pub degree: Option<usize>,
    /// Variable set to 1 to count and solve points.
    pub chart: Option<String>,
    pub generators: Vec<String>,
    #[serde(with = "opt_rational")]
    pub discriminant: Option<Rational>,
    pub irreducible_over_q: Option<bool>,
    pub points: Vec<FiberPoint>,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => serde_rational::serialize(q, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| crate::exactmath::parse_rational(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

fn chart_ideal(ideal: &Ideal, chart: usize) -> Ideal {
    let ring = ideal.ring();
    let x = ring.sub(&ring.var(chart), &ring.one());
    ideal.with_generators([x])
}

/// Classifies the projective scheme of a homogeneous ideal in
/// `t_0, …, t_{g²}` that is saturated by `t_0`.
///
/// Charts are tried in the order `t_0, t_{g²}, …, t_1`; the first one with
/// no points at infinity gives the degree, and for degree at most 2 the
/// exact points. Points are checked for validity, rank and, on valid tori,
/// polarizations up to `polarization_bound`.
pub fn classify(ideal: &Ideal, g: usize, flattening: Flattening, polarization_bound: u32) -> Result<FiberReport> {
    let ring = ideal.ring();
    let generators = ideal.reduced_basis().iter().map(|f| ring.format(f)).collect();
    let cone = ideal.dimension();
    let mut report = FiberReport {
        empty: cone <= 0,
        dim: if cone <= 0 { -1 } else { cone - 1 },
        degree: None,
        chart: None,
        generators,
        discriminant: None,
        irreducible_over_q: None,
        points: Vec::new(),
    };
    if report.dim != 0 {
        return Ok(report);
    }
    let n = ring.nvars();
    let charts = std::iter::once(0).chain((1..n).rev());
    for x in charts {
        let at_infinity = ideal.with_generators([ring.var(x)]);
        if at_infinity.dimension() > 0 {
            continue;
        }
        let chart = chart_ideal(ideal, x);
        let degree = chart.quotient_degree()?;
        report.degree = Some(degree);
        report.chart = Some(ring.vars()[x].clone());
        if degree <= 2 {
            let points = solve_points(ideal, x, g, flattening)?;
            report.discriminant = points.first().and_then(|p| p.discriminant.clone());
            report.irreducible_over_q = Some(match &report.discriminant {
                Some(d) => !is_rational_square(d),
                None => true,
            });
            for p in points {
                let validity = p.tau.validity();
                let polarization = if validity == Validity::ValidTorus {
                    Some(find_polarization(&p.tau, polarization_bound, true)?)
                } else {
                    None
                };
                report.points.push(FiberPoint {
                    ns_rank: ns_rank(&p.tau)?.rank,
                    tau: p.tau,
                    validity,
                    polarization,
                });
            }
        }
        break;
    }
    Ok(report)
}

fn linear_value(ring: &PolyRing, f: &Poly, y: Option<usize>) -> Result<(Rational, Rational)> {
    // f = v + c·y + d  ↦  v = −c·y − d
    let mut c = Rational::zero();
    let mut d = Rational::zero();
    for (coef, m) in &f.terms()[1..] {
        if m.is_one() {
            d = coef.clone();
        } else if y.is_some_and(|y| m.degree() == 1 && m.exp(y) == 1) {
            c = coef.clone();
        } else {
            return Err(Error::UnsupportedShape(format!("unexpected tail in {}", ring.format(f))));
        }
    }
    Ok((-c, -d))
}

/// Exact points of a zero-dimensional projective scheme of degree at most 2
/// on the chart `x = 1`.
///
/// The reduced basis on the chart must consist of linear forms plus at most
/// one quadratic `y² + p·y + q` in the single remaining variable. Irrational
/// points live in `Q(θ)` with `θ² = D = p² − 4q`; rational points are
/// labelled with `θ² = −1`.
pub fn solve_points(ideal: &Ideal, chart: usize, g: usize, flattening: Flattening) -> Result<Vec<ExactPoint>> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let basis = chart_ideal(ideal, chart).reduced_basis().to_vec();
    if basis.iter().any(Poly::is_constant) {
        return Ok(Vec::new());
    }
    let linear: Vec<&Poly> = basis.iter().filter(|f| f.total_degree() == 1).collect();
    let others: Vec<&Poly> = basis.iter().filter(|f| f.total_degree() != 1).collect();
    let mut is_lead = vec![false; n];
    for f in &linear {
        let v = f.lm().support().next().expect("linear");
        is_lead[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_lead[v]).collect();

    // values as a·y + b for each variable, y the free variable if any
    let (y, roots, disc): (Option<usize>, Vec<QuadExt>, Option<Rational>) = match (&free[..], &others[..]) {
        ([], []) => (None, vec![QuadExt::rational(Rational::zero(), &int(-1))], None),
        ([y], [quad]) => {
            let y = *y;
            let expect_y2 = crate::polyring::Monomial::var(n, y, 2);
            if quad.lm() != &expect_y2 {
                return Err(Error::UnsupportedShape(format!("expected a quadratic in {}", ring.vars()[y])));
            }
            let (p, q) = linear_value(ring, quad, Some(y))
                .map(|(c, d)| (-c, -d))
                .map_err(|_| Error::UnsupportedShape(format!("non-univariate quadratic {}", ring.format(quad))))?;
            let d = &p * &p - int(4) * &q;
            let half = Rational::new(1.into(), 2.into());
            let centre = -&p * &half;
            let roots = if let Some(s) = rational_sqrt(&d) {
                let m = int(-1);
                let mut r = vec![QuadExt::rational(&centre + &s * &half, &m)];
                if !s.is_zero() {
                    r.push(QuadExt::rational(&centre - &s * &half, &m));
                }
                r
            } else {
                vec![
                    QuadExt::new(centre.clone(), half.clone(), d.clone())?,
                    QuadExt::new(centre, -half, d.clone())?,
                ]
            };
            (Some(y), roots, Some(d))
        }
        _ => {
            return Err(Error::UnsupportedShape(format!(
                "{} free variables and {} nonlinear generators",
                free.len(),
                others.len()
            )))
        }
    };

    let mut out = Vec::with_capacity(roots.len());
    for r in roots {
        let m = r.m().clone();
        let mut coords = vec![QuadExt::rational(Rational::zero(), &m); n];
        if let Some(y) = y {
            coords[y] = r.clone();
        }
        for f in &linear {
            let v = f.lm().support().next().expect("linear");
            let (c, d) = linear_value(ring, f, y)?;
            coords[v] = r.scale(&c).try_add(&QuadExt::rational(d, &m))?;
        }
        let t0 = coords[0].clone();
        if t0.is_zero() {
            return Err(Error::Precondition("fiber point lies on t_0 = 0".into()));
        }
        let inv = t0.inv()?;
        let entries = Matrix::from_fn(g, g, |i, j| {
            coords[flattening.variable(g, i, j)].try_mul(&inv).expect("single field")
        });
        let tau = PeriodMatrix::from_entries(m, &entries)?;
        out.push(ExactPoint { coords, tau, discriminant: disc.clone() });
    }
    Ok(out)
}
