"""Oriented integration paths and wedge-shaped convergence domains.

A :class:`Contour` is an ordered chain of straight segments and circular
arcs, optionally marked where it passes through the origin (the singular
point of the kernels) and optionally tagged with infinite entry/exit rays.
A :class:`WedgeDomain` is one of the three angular convergence regions of
the regularized kernels: the plane minus a lower wedge ("plus"), minus the
mirrored upper wedge ("minus"), or minus both ("intersection"); membership
is a pure angular test around the apex, strict on the boundary rays.

:func:`deform_at_origin` realizes the standard deformation that removes a
radius-epsilon neighbourhood of the marked origin crossing and bridges the
gap with a circular arc above or below, keeping the path orientation.

Tolerances are fixed constants: 1e-14 for geometric coincidence
(continuity, crossing-on-origin) and 1e-12 for crossing detection.
Contours and domains are immutable; every operation is pure.
"""
import cmath
import json
import math
from dataclasses import dataclass

COINCIDENCE_TOL = 1e-14
CROSSING_TOL = 1e-12

_TWO_PI = 2.0 * math.pi
_QUARTER_PI = 0.25 * math.pi
_THREE_QUARTER_PI = 0.75 * math.pi


class ContourError(ValueError):
    """Ill-formed contour or ill-posed geometric request."""


@dataclass(frozen=True)
class Line:
    """Directed straight segment from ``start`` to ``end``."""
    start: complex
    end: complex

    def __post_init__(self):
        object.__setattr__(self, "start", complex(self.start))
        object.__setattr__(self, "end", complex(self.end))
        for v in (self.start, self.end):
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ContourError(f"non-finite segment endpoint {v!r}")
        if abs(self.end - self.start) == 0.0:
            raise ContourError("zero-length line segment")

    def point(self, t: float) -> complex:
        return self.start + t * (self.end - self.start)

    def derivative(self, t: float) -> complex:
        return self.end - self.start

    @property
    def length(self) -> float:
        return abs(self.end - self.start)

    def subsegment(self, t0: float, t1: float) -> "Line":
        return Line(self.point(t0), self.point(t1))

    def min_distance(self, p: complex):
        """Closest approach to ``p``: returns (distance, parameter)."""
        d = self.end - self.start
        t = ((p - self.start).real * d.real + (p - self.start).imag * d.imag) / (abs(d) ** 2)
        t = min(1.0, max(0.0, t))
        return abs(self.point(t) - p), t

    def radius_hits(self, eps: float, center: complex = 0.0 + 0.0j):
        """Parameters t in [0, 1] where |point(t) - center| = eps.

        Solved around the closest-approach point rather than with the raw
        quadratic formula, whose discriminant cancels catastrophically when
        eps is small against the endpoint distances.
        """
        d = self.end - self.start
        len2 = abs(d) ** 2
        rel = self.start - center
        t_c = -(rel.real * d.real + rel.imag * d.imag) / len2
        z_c = rel + t_c * d
        off2 = (eps * eps - abs(z_c) ** 2) / len2
        if off2 < 0.0:
            return []
        off = math.sqrt(off2)
        return [t for t in (t_c - off, t_c + off) if -1e-12 <= t <= 1.0 + 1e-12]


@dataclass(frozen=True)
class Arc:
    """Directed circular arc: center + radius * exp(i theta), theta running
    from ``theta_start`` to ``theta_end`` (signed sweep, radians)."""
    center: complex
    radius: float
    theta_start: float
    theta_end: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        object.__setattr__(self, "theta_start", float(self.theta_start))
        object.__setattr__(self, "theta_end", float(self.theta_end))
        if not (math.isfinite(self.center.real) and math.isfinite(self.center.imag)):
            raise ContourError(f"non-finite arc center {self.center!r}")
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise ContourError(f"arc radius must be positive, got {self.radius!r}")
        sweep = self.theta_end - self.theta_start
        if sweep == 0.0 or abs(sweep) > _TWO_PI + 1e-12:
            raise ContourError(f"arc sweep must be nonzero and at most 2 pi, got {sweep!r}")

    @property
    def sweep(self) -> float:
        return self.theta_end - self.theta_start

    def _theta(self, t: float) -> float:
        return self.theta_start + t * self.sweep

    def point(self, t: float) -> complex:
        return self.center + self.radius * cmath.exp(1j * self._theta(t))

    def derivative(self, t: float) -> complex:
        return 1j * self.sweep * self.radius * cmath.exp(1j * self._theta(t))

    @property
    def start(self) -> complex:
        return self.point(0.0)

    @property
    def end(self) -> complex:
        return self.point(1.0)

    @property
    def length(self) -> float:
        return self.radius * abs(self.sweep)

    def subsegment(self, t0: float, t1: float) -> "Arc":
        return Arc(self.center, self.radius, self._theta(t0), self._theta(t1))

    def _param_of_theta(self, theta: float):
        """Map an absolute angle to t in [0, 1] if it lies on the arc."""
        off = (theta - self.theta_start) % _TWO_PI
        if self.sweep < 0.0:
            off -= _TWO_PI
        t = off / self.sweep
        if -1e-12 <= t <= 1.0 + 1e-12:
            return min(1.0, max(0.0, t))
        # the wrapped alternative (relevant when |sweep| is close to 2 pi)
        alt = off - _TWO_PI if self.sweep > 0 else off + _TWO_PI
        t = alt / self.sweep
        if -1e-12 <= t <= 1.0 + 1e-12:
            return min(1.0, max(0.0, t))
        return None

    def min_distance(self, p: complex):
        """Closest approach to ``p``: returns (distance, parameter)."""
        rel = p - self.center
        candidates = [0.0, 1.0]
        if abs(rel) > 0.0:
            t = self._param_of_theta(cmath.phase(rel))
            if t is not None:
                candidates.append(t)
        best = min(candidates, key=lambda t: abs(self.point(t) - p))
        return abs(self.point(best) - p), best

    def radius_hits(self, eps: float, center: complex = 0.0 + 0.0j):
        """Parameters t in [0, 1] where |point(t) - center| = eps."""
        rel = center - self.center
        c = abs(rel)
        if c == 0.0:
            return []  # |point - center| is constant; an eps-match is degenerate
        cos_beta = (c * c + self.radius * self.radius - eps * eps) / (2.0 * c * self.radius)
        if abs(cos_beta) > 1.0:
            return []
        beta = math.acos(max(-1.0, min(1.0, cos_beta)))
        psi = cmath.phase(rel)  # direction from arc center towards the probe center
        ts = []
        for theta in (psi - beta, psi + beta):
            t = self._param_of_theta(theta)
            if t is not None:
                ts.append(t)
        return sorted(set(ts))


def _as_finite(z: complex, what: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ContourError(f"{what} must be finite, got {z!r}")
    return z


class Contour:
    """Oriented piecewise path of lines and arcs.

    ``crossing`` is the index of the segment that passes through z = 0 (or
    None); the exact on-segment location is resolved at construction and
    must coincide with the origin to within 1e-14.  ``ray_in``/``ray_out``
    optionally tag the path as extending to infinity before its first /
    after its last finite segment, along the given direction angles
    (traversal direction); rays take part in domain checks and can be
    truncated to finite segments for quadrature.
    """

    def __init__(self, segments, crossing=None, ray_in=None, ray_out=None):
        segments = tuple(segments)
        if not segments:
            raise ContourError("contour needs at least one segment")
        for a, b in zip(segments[:-1], segments[1:]):
            gap = abs(a.end - b.start)
            if gap > COINCIDENCE_TOL:
                raise ContourError(
                    f"discontinuous contour: gap {gap:.3e} between consecutive segments")
        self.segments = segments
        self.ray_in = None if ray_in is None else float(ray_in)
        self.ray_out = None if ray_out is None else float(ray_out)
        if crossing is None:
            self.crossing = None
            self.crossing_param = None
        else:
            crossing = int(crossing)
            if not 0 <= crossing < len(segments):
                raise ContourError(f"crossing segment index {crossing} out of range")
            dist, t = segments[crossing].min_distance(0.0 + 0.0j)
            if dist > COINCIDENCE_TOL:
                raise ContourError(
                    f"marked crossing segment misses the origin by {dist:.3e}")
            self.crossing = crossing
            self.crossing_param = t

    # -- basic geometry -------------------------------------------------

    @property
    def start(self) -> complex:
        return self.segments[0].start

    @property
    def end(self) -> complex:
        return self.segments[-1].end

    @property
    def length(self) -> float:
        return sum(s.length for s in self.segments)

    @property
    def is_infinite(self) -> bool:
        return self.ray_in is not None or self.ray_out is not None

    def point(self, loc) -> complex:
        seg, t = loc
        return self.segments[seg].point(t)

    def min_distance(self, p: complex):
        """Closest approach of the finite segments to ``p``.

        Returns (distance, (segment_index, parameter)).
        """
        p = _as_finite(p, "point")
        best = (math.inf, (0, 0.0))
        for i, seg in enumerate(self.segments):
            d, t = seg.min_distance(p)
            if d < best[0]:
                best = (d, (i, t))
        return best

    def arm_lengths(self):
        """Path length before and after the marked crossing."""
        if self.crossing is None:
            raise ContourError("contour has no crossing marker")
        i, t = self.crossing, self.crossing_param
        before = sum(s.length for s in self.segments[:i]) + t * self.segments[i].length
        after = (1.0 - t) * self.segments[i].length + sum(
            s.length for s in self.segments[i + 1:])
        return before, after

    def crossing_directions(self):
        """Unit tangents just before and just after the marked crossing."""
        if self.crossing is None:
            raise ContourError("contour has no crossing marker")
        i, t = self.crossing, self.crossing_param
        segs = self.segments
        if t > 1e-9:
            d_in = segs[i].derivative(max(0.0, t - 1e-9))
        else:
            if i == 0:
                raise ContourError("crossing at the very start of the contour")
            d_in = segs[i - 1].derivative(1.0)
        if t < 1.0 - 1e-9:
            d_out = segs[i].derivative(min(1.0, t + 1e-9))
        else:
            if i == len(segs) - 1:
                raise ContourError("crossing at the very end of the contour")
            d_out = segs[i + 1].derivative(0.0)
        return d_in / abs(d_in), d_out / abs(d_out)

    def truncated(self, length_in: float, length_out: float) -> "Contour":
        """Replace infinite rays by finite straight segments of the given lengths."""
        segs = list(self.segments)
        if self.ray_in is not None:
            d = cmath.exp(1j * self.ray_in)
            segs.insert(0, Line(self.start - length_in * d, self.start))
        if self.ray_out is not None:
            d = cmath.exp(1j * self.ray_out)
            segs.append(Line(self.end, self.end + length_out * d))
        crossing = self.crossing
        if crossing is not None and self.ray_in is not None:
            crossing += 1
        return Contour(segs, crossing=crossing)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        segs = []
        for s in self.segments:
            if isinstance(s, Line):
                segs.append({"type": "line",
                             "start": [s.start.real, s.start.imag],
                             "end": [s.end.real, s.end.imag]})
            else:
                segs.append({"type": "arc",
                             "center": [s.center.real, s.center.imag],
                             "radius": s.radius,
                             "theta_start": s.theta_start,
                             "theta_end": s.theta_end})
        return {"segments": segs, "crossing": self.crossing}

    @classmethod
    def from_json_dict(cls, data: dict) -> "Contour":
        try:
            raw = data["segments"]
        except (KeyError, TypeError):
            raise ContourError("contour JSON needs a 'segments' list")
        segs = []
        for i, entry in enumerate(raw):
            try:
                kind = entry["type"]
                if kind == "line":
                    segs.append(Line(complex(*entry["start"]), complex(*entry["end"])))
                elif kind == "arc":
                    segs.append(Arc(complex(*entry["center"]), float(entry["radius"]),
                                    float(entry["theta_start"]), float(entry["theta_end"])))
                else:
                    raise ContourError(f"segment {i}: unknown type {kind!r}")
            except (KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, ContourError):
                    raise
                raise ContourError(f"segment {i}: malformed entry ({exc})") from exc
        return cls(segs, crossing=data.get("crossing"))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Contour":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ContourError(f"invalid contour JSON: {exc}") from exc
        return cls.from_json_dict(data)

    def __repr__(self):
        tag = "" if self.crossing is None else f", crossing={self.crossing}"
        rays = ""
        if self.is_infinite:
            rays = f", rays=({self.ray_in}, {self.ray_out})"
        return f"Contour({len(self.segments)} segments{tag}{rays})"


def segment_path(*points, crossing="auto") -> Contour:
    """Polyline through ``points``; crossing='auto' marks a segment passing
    through the origin if one exists, None skips marking."""
    pts = [_as_finite(p, "polyline point") for p in points]
    if len(pts) < 2:
        raise ContourError("need at least two points")
    segs = [Line(a, b) for a, b in zip(pts[:-1], pts[1:])]
    idx = None
    if crossing == "auto":
        for i, s in enumerate(segs):
            d, _ = s.min_distance(0.0 + 0.0j)
            if d <= COINCIDENCE_TOL:
                idx = i
                break
    elif crossing is not None:
        idx = int(crossing)
    return Contour(segs, crossing=idx)


def tilted_segment(phi: float, q_min: float, q_max: float) -> Contour:
    """The tilted-line piece {q e^{i phi} : q in [q_min, q_max]} with the
    origin crossing marked (requires q_min < 0 < q_max)."""
    if not q_min < 0.0 < q_max:
        raise ContourError("tilted segment needs q_min < 0 < q_max")
    d = cmath.exp(1j * phi)
    return Contour([Line(q_min * d, 0.0 + 0.0j), Line(0.0 + 0.0j, q_max * d)],
                   crossing=1)


# -- wedge domains -------------------------------------------------------

@dataclass(frozen=True)
class WedgeDomain:
    """Angular convergence domain around an apex.

    kind 'plus': everything except the closed lower wedge
    arg in [5 pi/4, 7 pi/4] around the apex (boundary rays excluded from
    the domain); 'minus': the point reflection of that wedge into the
    upper half plane; 'intersection': both constraints at once.
    """
    kind: str
    apex: complex = 0.0 + 0.0j

    _KINDS = ("plus", "minus", "intersection")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"kind must be one of {self._KINDS}, got {self.kind!r}")
        _as_finite(self.apex, "apex")

    @classmethod
    def plus(cls, apex=0.0 + 0.0j):
        return cls("plus", complex(apex))

    @classmethod
    def minus(cls, apex=0.0 + 0.0j):
        return cls("minus", complex(apex))

    @classmethod
    def intersection(cls, apex=0.0 + 0.0j):
        return cls("intersection", complex(apex))


def _angular_inside_plus(v: complex) -> bool:
    # inside iff the angle, normalized into [-pi/4, 7 pi/4), lies strictly
    # within (-pi/4, 5 pi/4); equivalently, the principal atan2 angle is
    # strictly outside the closed excluded wedge [-3 pi/4, -pi/4].  Stated
    # on the principal range directly so boundary points are not nudged
    # across the strict inequality by a lossy +2 pi renormalization.
    theta = math.atan2(v.imag, v.real)
    return theta > -_QUARTER_PI or theta < -_THREE_QUARTER_PI


def classify_point(z: complex, domain: WedgeDomain) -> str:
    """Membership of ``z`` in a wedge domain: 'inside', 'outside' or 'apex'."""
    z = _as_finite(z, "point")
    v = z - domain.apex
    if abs(v) <= COINCIDENCE_TOL:
        return "apex"
    if domain.kind == "plus":
        ok = _angular_inside_plus(v)
    elif domain.kind == "minus":
        ok = _angular_inside_plus(-v)
    else:
        ok = _angular_inside_plus(v) and _angular_inside_plus(-v)
    return "inside" if ok else "outside"


_BASE_SAMPLES = 48
_REFINE_LEVELS = 24


def _sample_params(seg, near_t=None):
    ts = [k / _BASE_SAMPLES for k in range(_BASE_SAMPLES + 1)]
    if near_t is not None:
        # geometric refinement towards the closest-approach parameter
        for j in range(1, _REFINE_LEVELS + 1):
            h = 0.5 ** j
            ts.extend((near_t - h, near_t + h))
        ts.append(near_t)
    return sorted(t for t in ts if 0.0 <= t <= 1.0)


def path_in_domain(path: Contour, domain: WedgeDomain) -> str:
    """Classify a path against a wedge domain.

    Returns 'fully_inside', 'inside_except_crossing' (the only non-inside
    point is the marked origin crossing sitting at the apex) or 'violates'.
    Raises ContourError if the path passes within 1e-12 of the apex without
    a crossing marker there.
    """
    detail = domain_violations(path, domain)
    if detail["unmarked_apex"]:
        raise ContourError(
            f"path passes within {CROSSING_TOL:.0e} of the domain apex "
            f"{domain.apex!r} without a crossing marker")
    if detail["violations"]:
        return "violates"
    return "inside_except_crossing" if detail["apex_crossing"] else "fully_inside"


def domain_violations(path: Contour, domain: WedgeDomain) -> dict:
    """Detailed domain check used by path_in_domain and error reporting.

    Returns {'violations': [(segment_index, t, point), ...] (outside
    samples), 'apex_crossing': bool, 'unmarked_apex': bool}.
    """
    apex = domain.apex
    dmin, (si, st) = path.min_distance(apex)
    crossing_at_apex = (
        path.crossing is not None
        and abs(path.point((path.crossing, path.crossing_param)) - apex) <= CROSSING_TOL)
    unmarked = dmin <= CROSSING_TOL and not crossing_at_apex
    violations = []
    for i, seg in enumerate(path.segments):
        d, t_near = seg.min_distance(apex)
        ts = _sample_params(seg, near_t=t_near if d < 0.1 * max(seg.length, 1.0) else None)
        for t in ts:
            z = seg.point(t)
            c = classify_point(z, domain)
            if c == "outside":
                violations.append((i, t, z))
            # 'apex' samples are the crossing itself; handled via the marker
    if path.ray_in is not None:
        d = cmath.exp(1j * path.ray_in)
        for s in (1.0, 10.0, 1e3, 1e6):
            z = path.start - s * d
            if classify_point(z, domain) == "outside":
                violations.append((-1, s, z))
    if path.ray_out is not None:
        d = cmath.exp(1j * path.ray_out)
        for s in (1.0, 10.0, 1e3, 1e6):
            z = path.end + s * d
            if classify_point(z, domain) == "outside":
                violations.append((len(path.segments), s, z))
    return {"violations": violations, "apex_crossing": crossing_at_apex,
            "unmarked_apex": unmarked}


# -- origin deformation ----------------------------------------------------


def _walk_to_radius(path: Contour, eps: float, forward: bool):
    """From the marked crossing, walk along the path until |z| = eps.

    Returns (segment_index, t) of the first hit.  Raises ContourError when
    the path ends inside the eps-disk (epsilon too large).
    """
    i0, t0 = path.crossing, path.crossing_param
    n = len(path.segments)
    i, lo_t = i0, t0
    while 0 <= i < n:
        seg = path.segments[i]
        hits = seg.radius_hits(eps)
        if forward:
            hits = [t for t in hits if t > lo_t + 1e-13]
            if hits:
                return i, min(hits)
            i += 1
            lo_t = -1.0
        else:
            hits = [t for t in hits if t < lo_t - 1e-13]
            if hits:
                return i, max(hits)
            i -= 1
            lo_t = 2.0
    raise ContourError(
        f"epsilon {eps!r} reaches past the contour endpoint; "
        "choose it smaller than the distance from the crossing to either endpoint")


def radius_cut_locations(path: Contour, eps: float):
    """Locations where a crossing-marked path enters and leaves the
    origin-centred eps-disk: ((seg, t) before, (seg, t) after)."""
    if path.crossing is None:
        raise ContourError("contour has no crossing marker at the origin")
    before, after = path.arm_lengths()
    if not 0.0 < eps < min(before, after):
        raise ContourError(
            f"epsilon must lie in (0, {min(before, after):.6g}) for this contour, "
            f"got {eps!r}")
    return (_walk_to_radius(path, eps, forward=False),
            _walk_to_radius(path, eps, forward=True))


def subpath_segments(path: Contour, loc0, loc1):
    """Segments of the piece of ``path`` between locations loc0 and loc1
    (each a (segment_index, t) pair, loc0 not after loc1)."""
    (i0, t0), (i1, t1) = loc0, loc1
    if (i0, t0) > (i1, t1):
        raise ContourError("subpath locations out of order")
    if i0 == i1:
        if t1 - t0 <= 1e-13:
            return []
        return [path.segments[i0].subsegment(t0, t1)]
    out = []
    if t0 < 1.0 - 1e-13:
        out.append(path.segments[i0].subsegment(t0, 1.0))
    out.extend(path.segments[i0 + 1:i1])
    if t1 > 1e-13:
        out.append(path.segments[i1].subsegment(0.0, t1))
    return out


def split_at_radius(path: Contour, eps: float):
    """Split a crossing-marked path at |z| = eps around the origin.

    Returns (head_segments, a, b, tail_segments): the part of the path up
    to the entry point ``a`` of the eps-disk and the part from the exit
    point ``b`` on; both endpoints lie at |z| = eps exactly (up to roundoff).
    """
    (bi, bt), (fi, ft) = radius_cut_locations(path, eps)
    head = subpath_segments(path, (0, 0.0), (bi, bt))
    tail = subpath_segments(path, (fi, ft), (len(path.segments) - 1, 1.0))
    a = path.segments[bi].point(bt)
    b = path.segments[fi].point(ft)
    return head, a, b, tail


def deform_at_origin(path: Contour, epsilon: float, side: str) -> Contour:
    """Deform a crossing-marked path around z = 0.

    Removes the radius-``epsilon`` neighbourhood of the marked crossing and
    bridges it with the circular arc of radius epsilon centred at the
    origin passing on the requested ``side`` ('above': through the upper
    half plane, 'below': through the lower); for a straight crossing this
    is the textbook semicircle.  Orientation is preserved; the result
    carries no crossing marker, so deforming twice raises.
    """
    if side not in ("above", "below"):
        raise ContourError(f"side must be 'above' or 'below', got {side!r}")
    if not (isinstance(epsilon, (int, float)) and epsilon > 0.0
            and math.isfinite(epsilon)):
        raise ContourError(f"epsilon must be a positive real, got {epsilon!r}")
    head, a, b, tail = split_at_radius(path, float(epsilon))
    theta_a = cmath.phase(a)
    theta_b = cmath.phase(b)
    sweep_ccw = (theta_b - theta_a) % _TWO_PI
    candidates = []
    for sweep in (sweep_ccw, sweep_ccw - _TWO_PI):
        if sweep == 0.0:
            continue
        mid_sin = math.sin(theta_a + 0.5 * sweep)
        candidates.append((sweep, mid_sin))
    want = 1.0 if side == "above" else -1.0
    chosen = [s for s, m in candidates if m * want > 1e-12]
    if not chosen:
        raise ContourError(
            f"no radius-{epsilon} arc on side {side!r} connects the excision "
            "points; the crossing arms are too close to vertical")
    arc = Arc(0.0 + 0.0j, float(epsilon), theta_a, theta_a + chosen[0])
    # snap straight neighbours exactly onto the arc endpoints (the cut
    # solver leaves ~1e-15 residue that would trip the continuity check)
    if head and isinstance(head[-1], Line):
        head = head[:-1] + [Line(head[-1].start, arc.start)]
    if tail and isinstance(tail[0], Line):
        tail = [Line(arc.end, tail[0].end)] + tail[1:]
    return Contour(head + [arc] + tail, crossing=None,
                   ray_in=path.ray_in, ray_out=path.ray_out)
