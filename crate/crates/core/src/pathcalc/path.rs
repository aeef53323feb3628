use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};

const CONTINUITY_TOL: f64 = 1e-12;
const PUNCTURE_TOL: f64 = 1e-15;
const TANGENT_TOL: f64 = 1e-9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{ix} − 1` without cancellation for small `x`.
fn expm1_i(x: f64) -> Complex64 {
    let h = 0.5 * x;
    c(0.0, 2.0 * h.sin()) * Complex64::from_polar(1.0, h)
}

/// A λ-value together with `1 − λ`, each computed without cancellation near its own zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaPoint {
    pub lambda: Complex64,
    pub one_minus: Complex64,
}

impl LambdaPoint {
    pub fn new(lambda: Complex64) -> Self {
        LambdaPoint { lambda, one_minus: 1.0 - lambda }
    }

    /// `anchor + offset`, exact at the punctures when `anchor ∈ {0, 1}`.
    pub fn near(anchor: Complex64, offset: Complex64) -> Self {
        LambdaPoint { lambda: anchor + offset, one_minus: (1.0 - anchor) - offset }
    }

    pub fn distance_to_punctures(&self) -> f64 {
        self.lambda.norm().min(self.one_minus.norm())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Segment {
    Line { from: Complex64, to: Complex64 },
    Arc { center: Complex64, radius: f64, from_angle: f64, to_angle: f64 },
}

impl Segment {
    pub fn start(&self) -> Complex64 {
        match *self {
            Segment::Line { from, .. } => from,
            Segment::Arc { center, radius, from_angle, .. } => center + Complex64::from_polar(radius, from_angle),
        }
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            Segment::Line { to, .. } => to,
            Segment::Arc { center, radius, to_angle, .. } => center + Complex64::from_polar(radius, to_angle),
        }
    }

    /// `point(u) − start` for `u ∈ [0, 1]`.
    pub fn offset_from_start(&self, u: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => (to - from) * u,
            Segment::Arc { radius, from_angle, to_angle, .. } => {
                Complex64::from_polar(radius, from_angle) * expm1_i(u * (to_angle - from_angle))
            }
        }
    }

    /// `point(1 − v) − end` for `v ∈ [0, 1]`.
    pub fn offset_from_end(&self, v: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => (from - to) * v,
            Segment::Arc { radius, from_angle, to_angle, .. } => {
                Complex64::from_polar(radius, to_angle) * expm1_i(-v * (to_angle - from_angle))
            }
        }
    }

    pub fn point(&self, u: f64) -> Complex64 {
        self.start() + self.offset_from_start(u)
    }

    /// `d point / du`.
    pub fn derivative(&self, u: f64) -> Complex64 {
        match *self {
            Segment::Line { from, to } => to - from,
            Segment::Arc { radius, from_angle, to_angle, .. } => {
                let d = to_angle - from_angle;
                c(0.0, radius * d) * Complex64::from_polar(1.0, from_angle + u * d)
            }
        }
    }

    pub fn reversed(&self) -> Segment {
        match *self {
            Segment::Line { from, to } => Segment::Line { from: to, to: from },
            Segment::Arc { center, radius, from_angle, to_angle } => {
                Segment::Arc { center, radius, from_angle: to_angle, to_angle: from_angle }
            }
        }
    }

    /// Restriction to `[u0, u1]`, reparametrized to `[0, 1]`.
    pub fn sub(&self, u0: f64, u1: f64) -> Segment {
        match *self {
            Segment::Line { .. } => Segment::Line { from: self.point(u0), to: self.point(u1) },
            Segment::Arc { center, radius, from_angle, to_angle } => {
                let d = to_angle - from_angle;
                Segment::Arc { center, radius, from_angle: from_angle + u0 * d, to_angle: from_angle + u1 * d }
            }
        }
    }

    fn is_degenerate(&self) -> bool {
        match *self {
            Segment::Line { from, to } => from == to,
            Segment::Arc { from_angle, to_angle, .. } => from_angle == to_angle,
        }
    }

    /// Smallest distance from `p` to the segment restricted to `[u0, u1]`.
    fn distance_to(&self, p: Complex64, u0: f64, u1: f64) -> f64 {
        match *self {
            Segment::Line { .. } => {
                let a = self.point(u0);
                let b = self.point(u1);
                let d = b - a;
                if d.norm_sqr() == 0.0 {
                    return (p - a).norm();
                }
                let s = (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
                (a + d * s - p).norm()
            }
            Segment::Arc { center, radius, from_angle, to_angle } => {
                let a0 = from_angle + u0 * (to_angle - from_angle);
                let a1 = from_angle + u1 * (to_angle - from_angle);
                let (lo, hi) = if a0 <= a1 { (a0, a1) } else { (a1, a0) };
                let q = p - center;
                let ends = (self.point(u0) - p).norm().min((self.point(u1) - p).norm());
                if q.norm() == 0.0 {
                    return radius;
                }
                let phi = q.arg();
                let tau = std::f64::consts::TAU;
                // is some representative of phi inside [lo, hi]?
                let k = ((lo - phi) / tau).ceil();
                if phi + k * tau <= hi {
                    ends.min((q.norm() - radius).abs())
                } else {
                    ends
                }
            }
        }
    }
}

/// A piecewise path in the λ-plane; segment `k` of `n` occupies `t ∈ [k/n, (k+1)/n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    segments: Vec<Segment>,
    start_tangent: Option<Complex64>,
    end_tangent: Option<Complex64>,
}

/// Point and velocity at one parameter value.
#[derive(Clone, Copy, Debug)]
pub struct PathSample {
    pub point: LambdaPoint,
    pub velocity: Complex64,
}

fn is_puncture(z: Complex64) -> bool {
    z.norm() <= PUNCTURE_TOL || (z - 1.0).norm() <= PUNCTURE_TOL
}

fn puncture_anchor(z: Complex64) -> Complex64 {
    if z.norm() <= PUNCTURE_TOL {
        c(0.0, 0.0)
    } else if (z - 1.0).norm() <= PUNCTURE_TOL {
        c(1.0, 0.0)
    } else {
        z
    }
}

impl Path {
    pub fn new(segments: Vec<Segment>, start_tangent: Option<Complex64>, end_tangent: Option<Complex64>) -> Result<Self> {
        let path = Path { segments, start_tangent, end_tangent };
        path.validate()?;
        Ok(path)
    }

    fn validate(&self) -> Result<()> {
        if self.segments.is_empty() {
            return Err(Error::InvalidPath("path has no segments".into()));
        }
        for (k, s) in self.segments.iter().enumerate() {
            let finite = match *s {
                Segment::Line { from, to } => from.is_finite() && to.is_finite(),
                Segment::Arc { center, radius, from_angle, to_angle } => {
                    if !(radius > 0.0) {
                        return Err(Error::InvalidPath(format!("segment {k}: arc radius must be positive")));
                    }
                    center.is_finite() && radius.is_finite() && from_angle.is_finite() && to_angle.is_finite()
                }
            };
            if !finite {
                return Err(Error::InvalidPath(format!("segment {k}: non-finite data")));
            }
        }
        for (k, w) in self.segments.windows(2).enumerate() {
            if (w[0].end() - w[1].start()).norm() > CONTINUITY_TOL {
                return Err(Error::InvalidPath(format!(
                    "segment {} ends at {} but segment {} starts at {}",
                    k,
                    w[0].end(),
                    k + 1,
                    w[1].start()
                )));
            }
        }
        for t in [self.start_tangent, self.end_tangent].into_iter().flatten() {
            if t.norm() == 0.0 || !t.is_finite() {
                return Err(Error::InvalidPath("tangent vector must be nonzero".into()));
            }
        }
        // interior of the path must miss both punctures
        let n = self.segments.len();
        for (k, s) in self.segments.iter().enumerate() {
            if s.is_degenerate() {
                let p = s.start();
                if n > 1 && is_puncture(p) {
                    return Err(Error::InvalidPath(format!("segment {k} sits on a puncture")));
                }
                continue;
            }
            for p in [c(0.0, 0.0), c(1.0, 0.0)] {
                let u0 = if k == 0 && (s.start() - p).norm() <= PUNCTURE_TOL { 1e-9 } else { 0.0 };
                let u1 = if k == n - 1 && (s.end() - p).norm() <= PUNCTURE_TOL { 1.0 - 1e-9 } else { 1.0 };
                let d = s.distance_to(p, u0, u1);
                let limit = if u0 > 0.0 || u1 < 1.0 { 0.0 } else { PUNCTURE_TOL };
                if d <= limit {
                    return Err(Error::InvalidPath(format!("segment {k} passes through the puncture λ = {}", p.re)));
                }
            }
        }
        if is_puncture(self.start()) {
            let u = self
                .start_tangent
                .ok_or_else(|| Error::InvalidPath("path starts at a puncture without a tangent vector".into()))?;
            let d = self.segments[0].derivative(0.0);
            if (d / d.norm() - u / u.norm()).norm() > TANGENT_TOL {
                return Err(Error::InvalidPath(format!("start tangent {u} does not match the path direction {d}")));
            }
        }
        if is_puncture(self.end()) {
            let v = self
                .end_tangent
                .ok_or_else(|| Error::InvalidPath("path ends at a puncture without a tangent vector".into()))?;
            let d = self.segments[n - 1].derivative(1.0);
            if (d / d.norm() + v / v.norm()).norm() > TANGENT_TOL {
                return Err(Error::InvalidPath(format!("end tangent {v} does not match minus the path direction {d}")));
            }
        }
        Ok(())
    }

    pub fn line(from: Complex64, to: Complex64) -> Result<Self> {
        Self::new(vec![Segment::Line { from, to }], None, None)
    }

    pub fn polyline(points: &[Complex64]) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidPath("polyline needs at least two points".into()));
        }
        let segs = points.windows(2).map(|w| Segment::Line { from: w[0], to: w[1] }).collect();
        Self::new(segs, None, None)
    }

    /// Full counterclockwise circle starting at `center + radius·e^{i·start_angle}`.
    pub fn circle(center: Complex64, radius: f64, start_angle: f64) -> Result<Self> {
        let seg = Segment::Arc { center, radius, from_angle: start_angle, to_angle: start_angle + std::f64::consts::TAU };
        Self::new(vec![seg], None, None)
    }

    /// The straight path from 0 to 1 with tangents `+1` at 0 and `−1` at 1.
    pub fn dch() -> Self {
        Self::new(vec![Segment::Line { from: c(0.0, 0.0), to: c(1.0, 0.0) }], Some(c(1.0, 0.0)), Some(c(-1.0, 0.0)))
            .expect("dch is a valid path")
    }

    pub fn constant(p: Complex64) -> Result<Self> {
        Self::new(vec![Segment::Line { from: p, to: p }], None, None)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start_tangent(&self) -> Option<Complex64> {
        self.start_tangent
    }

    pub fn end_tangent(&self) -> Option<Complex64> {
        self.end_tangent
    }

    pub fn start(&self) -> Complex64 {
        self.segments[0].start()
    }

    pub fn end(&self) -> Complex64 {
        self.segments[self.segments.len() - 1].end()
    }

    pub fn is_closed(&self) -> bool {
        (self.start() - self.end()).norm() <= CONTINUITY_TOL
    }

    pub fn cuspidal_start(&self) -> bool {
        is_puncture(self.start())
    }

    pub fn cuspidal_end(&self) -> bool {
        is_puncture(self.end())
    }

    pub fn is_cuspidal(&self) -> bool {
        self.cuspidal_start() || self.cuspidal_end()
    }

    pub fn num_segments(&self) -> usize {
        self.segments.len()
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let n = self.segments.len();
        let x = t.clamp(0.0, 1.0) * n as f64;
        let k = (x.floor() as usize).min(n - 1);
        (k, x - k as f64)
    }

    /// Point and velocity at `t`, anchored at the nearer end of the active segment.
    pub fn sample(&self, t: f64) -> PathSample {
        let (k, u) = self.locate(t);
        self.sample_in_segment(k, u)
    }

    /// Sample of segment `k` at local parameter `u` (clamped to `[0, 1]`); the velocity is
    /// with respect to the global parameter.
    pub fn sample_in_segment(&self, k: usize, u: f64) -> PathSample {
        let u = u.clamp(0.0, 1.0);
        let n = self.segments.len() as f64;
        let s = &self.segments[k];
        let point = if u <= 0.5 {
            LambdaPoint::near(puncture_anchor(s.start()), s.offset_from_start(u))
        } else {
            LambdaPoint::near(puncture_anchor(s.end()), s.offset_from_end(1.0 - u))
        };
        PathSample { point, velocity: s.derivative(u) * n }
    }

    /// Sample at `t = τ`, computed from the start of the first segment; needs `τ ≤ 1/n`.
    pub fn sample_from_start(&self, tau: f64) -> PathSample {
        let n = self.segments.len() as f64;
        let s = &self.segments[0];
        let u = tau * n;
        PathSample {
            point: LambdaPoint::near(puncture_anchor(s.start()), s.offset_from_start(u)),
            velocity: s.derivative(u) * n,
        }
    }

    /// Sample at `t = 1 − τ`, computed from the end of the last segment; needs `τ ≤ 1/n`.
    pub fn sample_from_end(&self, tau: f64) -> PathSample {
        let n = self.segments.len() as f64;
        let s = &self.segments[self.segments.len() - 1];
        let v = tau * n;
        PathSample {
            point: LambdaPoint::near(puncture_anchor(s.end()), s.offset_from_end(v)),
            velocity: s.derivative(1.0 - v) * n,
        }
    }

    pub fn point(&self, t: f64) -> Complex64 {
        self.sample(t).point.lambda
    }

    /// Parameter values where segments meet, including 0 and 1.
    pub fn breakpoints(&self) -> Vec<f64> {
        let n = self.segments.len();
        (0..=n).map(|k| k as f64 / n as f64).collect()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if (self.end() - other.start()).norm() > CONTINUITY_TOL {
            return Err(Error::InvalidPath(format!(
                "cannot compose: first path ends at {}, second starts at {}",
                self.end(),
                other.start()
            )));
        }
        let mut segments = self.segments.clone();
        segments.extend_from_slice(&other.segments);
        Path::new(segments, self.start_tangent, other.end_tangent)
    }

    pub fn inverse(&self) -> Path {
        Path {
            segments: self.segments.iter().rev().map(Segment::reversed).collect(),
            start_tangent: self.end_tangent,
            end_tangent: self.start_tangent,
        }
    }

    /// The sub-path on `[ε, 1 − ε]`, reparametrized to `[0, 1]`.
    pub fn shrink(&self, eps: f64) -> Result<Path> {
        if eps == 0.0 {
            return Ok(self.clone());
        }
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::Domain(format!("shrink parameter {eps} outside (0, 1/2)")));
        }
        let (k0, u0) = self.locate(eps);
        let (k1, u1) = self.locate(1.0 - eps);
        let mut segments = Vec::new();
        for k in k0..=k1 {
            let a = if k == k0 { u0 } else { 0.0 };
            let b = if k == k1 { u1 } else { 1.0 };
            if b > a {
                segments.push(self.segments[k].sub(a, b));
            }
        }
        Path::new(segments, None, None)
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(format!("path JSON: {}", msg.into()))
}

fn get_f64(obj: &Value, key: &str) -> Result<f64> {
    obj.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| parse_err(format!("missing or non-numeric `{key}`")))
}

fn get_pair(obj: &Value, key: &str) -> Result<Option<Complex64>> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Array(a)) if a.len() == 2 => match (a[0].as_f64(), a[1].as_f64()) {
            (Some(re), Some(im)) => Ok(Some(c(re, im))),
            _ => Err(parse_err(format!("`{key}` must hold two numbers"))),
        },
        Some(_) => Err(parse_err(format!("`{key}` must be [re, im]"))),
    }
}

fn require_pair(obj: &Value, key: &str) -> Result<Complex64> {
    get_pair(obj, key)?.ok_or_else(|| parse_err(format!("missing `{key}`")))
}

fn pair_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Parses a path from JSON, or the built-in name `dch` (bare or quoted).
pub fn path_from_json(text: &str) -> Result<Path> {
    let trimmed = text.trim();
    if trimmed == "dch" || trimmed == "\"dch\"" {
        return Ok(Path::dch());
    }
    let doc: Value = serde_json::from_str(trimmed).map_err(|e| parse_err(format!("line {}: {e}", e.line())))?;
    if let Some(key) = doc
        .as_object()
        .and_then(|o| o.keys().find(|k| !matches!(k.as_str(), "segments" | "start_tangent" | "end_tangent")))
    {
        return Err(parse_err(format!("unknown field `{key}`")));
    }
    let segs = doc
        .get("segments")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("`segments` must be an array"))?;
    let mut segments = Vec::with_capacity(segs.len());
    for (k, s) in segs.iter().enumerate() {
        let seg = match s.get("type").and_then(Value::as_str) {
            Some("line") => Segment::Line { from: require_pair(s, "from")?, to: require_pair(s, "to")? },
            Some("arc") => Segment::Arc {
                center: require_pair(s, "center")?,
                radius: get_f64(s, "radius")?,
                from_angle: get_f64(s, "from_angle")?,
                to_angle: get_f64(s, "to_angle")?,
            },
            _ => return Err(parse_err(format!("segment {k}: `type` must be \"line\" or \"arc\""))),
        };
        segments.push(seg);
    }
    Path::new(segments, get_pair(&doc, "start_tangent")?, get_pair(&doc, "end_tangent")?)
}

pub fn path_to_json(path: &Path) -> String {
    let segments: Vec<Value> = path
        .segments
        .iter()
        .map(|s| match *s {
            Segment::Line { from, to } => json!({"type": "line", "from": pair_json(from), "to": pair_json(to)}),
            Segment::Arc { center, radius, from_angle, to_angle } => json!({
                "type": "arc",
                "center": pair_json(center),
                "radius": radius,
                "from_angle": from_angle,
                "to_angle": to_angle,
            }),
        })
        .collect();
    let mut doc = json!({ "segments": segments });
    if let Some(t) = path.start_tangent {
        doc["start_tangent"] = pair_json(t);
    }
    if let Some(t) = path.end_tangent {
        doc["end_tangent"] = pair_json(t);
    }
    doc.to_string()
}
