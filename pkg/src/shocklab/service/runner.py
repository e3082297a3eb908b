"""Task dispatch: a validated RunConfig in, deterministic output files out.

Weight grids fan out over a thread pool when requested; results are collected
by index so ordering (and therefore serialized output) is independent of
scheduling.  Every JSON output embeds the config hash; CSV outputs carry it
in a leading comment line.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .. import __version__
from ..criteria import (MODE_PLAIN, MODE_STRONG, check_h1, check_h2,
                        degenerate_neighbor_check, euler_contact_range_certificate,
                        f_function_profile, find_weight_range,
                        mhd_intersection_certificate, rarefaction_intersection,
                        sample_sigma_surface, setup_from_states)
from ..criteria.surface import default_box
from ..criteria.witnesses import intersection_witness_certificate
from ..diagnostics import identity_report, identity_report_passes
from ..errors import NotApplicableError, PreconditionError, ShockLabError
from ..models import EulerModel, MhdModel, make_model
from ..sim import bump_profile, run_contraction_experiment, step_profile
from ..waves import (Discontinuity, classify_admissibility, curve_point,
                     trace_hugoniot, trace_rarefaction)
from .schemas import OutputFile, RunConfig, RunResult


def _json_output(name: str, payload: dict, config_hash: str, seed: int) -> OutputFile:
    body = dict(payload)
    body["config_sha256"] = config_hash
    body["seed"] = seed
    body["tool_version"] = __version__
    text = json.dumps(body, sort_keys=True, indent=2, default=_plain) + "\n"
    return OutputFile(name=name, kind="json", text=text)


def _plain(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _csv_output(name: str, text: str, config_hash: str) -> OutputFile:
    return OutputFile(name=name, kind="csv",
                      text=f"# config_sha256={config_hash}\n" + text)


def _cert_output(name: str, cert, config_hash: str, seed: int) -> OutputFile:
    return OutputFile(name=name, kind="json",
                      text=cert.to_json(extra={"config_sha256": config_hash,
                                               "seed": seed}))


def _build_model(config: RunConfig):
    return make_model(config.model.name, **config.model.build_kwargs())


def _resolve_pair(config: RunConfig, model) -> tuple[np.ndarray, np.ndarray, float, int | None]:
    spec = config.discontinuity
    if spec is None:
        raise PreconditionError(f"task {config.task!r} needs a discontinuity")
    if spec.explicit is not None:
        ex = spec.explicit
        u_l = np.asarray(ex.u_l, dtype=float)
        u_r = np.asarray(ex.u_r, dtype=float)
        if len(u_l) != model.n or len(u_r) != model.n:
            raise PreconditionError(f"states must have {model.n} components "
                                    f"for model {model.name}")
        return u_l, u_r, ex.sigma, ex.family
    fc = spec.from_curve
    base = np.asarray(fc.base, dtype=float)
    if len(base) != model.n:
        raise PreconditionError(f"base state must have {model.n} components")
    span = fc.span_factor * fc.s0
    curve = trace_hugoniot(model, base, fc.family, span=span,
                           step=fc.step_fraction * span, liu_sign=fc.liu_sign)
    state, sigma = curve_point(curve, fc.s0)
    # Family-n curves run from the right state outward; others from the left.
    trend = curve._extra.get("liu_trend", -1)
    if trend > 0:
        return state, base, float(sigma), fc.family
    return base, state, float(sigma), fc.family


def _map_weights(config: RunConfig, weights: list[float], fn) -> list:
    if config.threads > 1 and len(weights) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            return list(pool.map(fn, weights))
    return [fn(a) for a in weights]


# -- tasks -------------------------------------------------------------------


def _task_identities(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    opts = config.identities
    report = identity_report(model, n_triples=opts.n_triples,
                             n_compatibility=opts.n_compatibility,
                             n_nonnegativity=opts.n_nonnegativity,
                             seed=config.seed)
    ok = identity_report_passes(report)
    report["passes"] = ok
    out = _json_output("identities.json", report, config_hash, config.seed)
    return RunResult(status="pass" if ok else "violation",
                     message=("identity suites within tolerance" if ok
                              else "identity defect above tolerance"),
                     config_sha256=config_hash, seed=config.seed,
                     outputs=[out], summary={"passes": ok, "model": model.name})


def _task_trace(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    opts = config.trace
    if opts.base is not None:
        base = np.asarray(opts.base, dtype=float)
    elif config.discontinuity is not None:
        base = _resolve_pair(config, model)[0]
    else:
        raise PreconditionError("trace needs trace.base or a discontinuity")
    if opts.kind == "hugoniot":
        curve = trace_hugoniot(model, base, opts.family, span=opts.span,
                               step=opts.step, liu_sign=opts.liu_sign)
    else:
        curve = trace_rarefaction(model, base, opts.family, opts.direction,
                                  span=opts.span, step=opts.step)
    name = f"curve_{opts.kind}_family{opts.family}.csv"
    out = _csv_output(name, curve.to_csv(), config_hash)
    summary = {"kind": opts.kind, "family": opts.family, "samples": len(curve),
               "span": curve.span}
    return RunResult(status="pass", message=f"traced {len(curve)} samples",
                     config_sha256=config_hash, seed=config.seed,
                     outputs=[out], summary=summary)


def _task_classify(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    u_l, u_r, sigma, family = _resolve_pair(config, model)
    if sigma is None:
        from ..waves import solve_speed
        sigma = solve_speed(model, u_l, u_r)
    d = Discontinuity(u_l, u_r, float(sigma), family=family)
    curve = None
    if family is not None:
        try:
            jump = float(np.linalg.norm(u_r - u_l))
            curve = trace_hugoniot(model, u_l, family, span=2.5 * jump + 0.1,
                                   step=(2.5 * jump + 0.1) / 100.0)
        except ShockLabError:
            curve = None
    flags = classify_admissibility(model, d, curve=curve)
    payload = {
        "u_minus": u_l.tolist(),
        "u_plus": u_r.tolist(),
        "sigma": float(sigma),
        "family": d.family,
        "flags": flags.as_dict(),
    }
    out = _json_output("classification.json", payload, config_hash, config.seed)
    return RunResult(status="pass", message="classified",
                     config_sha256=config_hash, seed=config.seed, outputs=[out],
                     summary=payload["flags"])


def _task_check_res(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    u_l, u_r, sigma, family = _resolve_pair(config, model)
    if config.weights is None:
        raise PreconditionError("check-res needs weights")
    weights = config.weights.resolve()
    mode = MODE_STRONG if config.h2.mode == "sres" else MODE_PLAIN

    def one(a: float):
        setup = setup_from_states(model, u_l, u_r, a=a, sigma=sigma, family=family)
        box = default_box(setup, margin=config.surface.box_margin)
        surface = sample_sigma_surface(setup, n_samples=config.surface.n_samples,
                                       box=box, seed=config.seed)
        h1 = check_h1(setup, surface)
        h2 = check_h2(setup, surface, families=config.h2.families,
                      curve_span=config.h2.curve_span,
                      samples_per_curve=config.h2.samples_per_curve,
                      tube_radius=config.h2.tube_radius,
                      tube_offsets=config.h2.tube_offsets,
                      max_seed_samples=config.h2.max_seed_samples, mode=mode)
        return a, h1, h2

    results = _map_weights(config, weights, one)
    outputs, any_violation, records = [], False, []
    for a, h1, h2 in results:
        tag = f"a{a:.6g}".replace(".", "p").replace("-", "m")
        outputs.append(_cert_output(f"certificate_h1_{tag}.json", h1, config_hash,
                                    config.seed))
        outputs.append(_cert_output(f"certificate_h2_{tag}.json", h2, config_hash,
                                    config.seed))
        any_violation |= h1.is_violation or h2.is_violation
        records.append({"a": a, "h1": h1.kind, "h2": h2.kind})
    status = "violation" if any_violation else "pass"
    return RunResult(status=status,
                     message=("violation certified" if any_violation
                              else "no violation found"),
                     config_sha256=config_hash, seed=config.seed,
                     outputs=outputs, summary={"mode": config.h2.mode,
                                               "weights": records})


def _auto_theorem(config: RunConfig, model, setup) -> str:
    if isinstance(model, MhdModel) and setup.family in (2, 3):
        return "mhd-intermediate"
    if isinstance(model, EulerModel) and setup.family == 2:
        return "euler-contact"
    if config.no_contraction.family is not None and \
            model.field_kind(config.no_contraction.family) == "linearly-degenerate":
        return "degenerate-neighbor"
    return "gnl-intersection"


def _task_no_contraction(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    u_l, u_r, sigma, family = _resolve_pair(config, model)
    if config.weights is None:
        raise PreconditionError("no-contraction needs weights")
    weights = config.weights.resolve()
    opts = config.no_contraction

    def one(a: float):
        setup = setup_from_states(model, u_l, u_r, a=a, sigma=sigma, family=family)
        theorem = opts.theorem if opts.theorem != "auto" else _auto_theorem(
            config, model, setup)
        if theorem == "mhd-intermediate":
            return theorem, [mhd_intersection_certificate(setup,
                                                          max_span=opts.max_span)]
        if theorem == "euler-contact":
            res = euler_contact_range_certificate(
                setup, max_span=opts.max_span,
                surface_samples=config.surface.n_samples, seed=config.seed,
                h2_kwargs={"families": config.h2.families,
                           "samples_per_curve": config.h2.samples_per_curve,
                           "max_seed_samples": config.h2.max_seed_samples})
            return theorem, res.certificates
        if theorem == "degenerate-neighbor":
            if opts.family is None:
                raise PreconditionError("degenerate-neighbor needs "
                                        "no_contraction.family")
            return theorem, [degenerate_neighbor_check(setup, opts.family)]
        # gnl-intersection: explicit neighbor family and direction
        if opts.family is None or opts.direction is None:
            raise PreconditionError("gnl-intersection needs no_contraction.family "
                                    "and no_contraction.direction")
        hit = rarefaction_intersection(setup, opts.family, opts.direction,
                                       max_span=opts.max_span)
        if not hit.found:
            raise NotApplicableError(
                f"no level-surface crossing within span {hit.span_traced:g}")
        profile = f_function_profile(setup, hit.curve, hit.sbar, ubar=hit.ubar)
        cert = intersection_witness_certificate(
            setup, opts.family, opts.direction, hit, profile,
            mechanism="genuinely nonlinear neighbor family")
        return theorem, [cert]

    results = _map_weights(config, weights, one)
    outputs, any_violation, records = [], False, []
    for a, (theorem, certs) in zip(weights, results):
        tag = f"a{a:.6g}".replace(".", "p").replace("-", "m")
        for i, cert in enumerate(certs):
            suffix = f"_{i}" if len(certs) > 1 else ""
            outputs.append(_cert_output(f"certificate_{theorem}_{tag}{suffix}.json",
                                        cert, config_hash, config.seed))
        violated = any(c.is_violation for c in certs)
        any_violation |= violated
        records.append({"a": a, "theorem": theorem, "violation": violated})
    status = "violation" if any_violation else "pass"
    return RunResult(status=status,
                     message=("violation certified" if any_violation
                              else "no violation found"),
                     config_sha256=config_hash, seed=config.seed,
                     outputs=outputs, summary={"weights": records})


def _task_weight_range(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    u_l, u_r, sigma, family = _resolve_pair(config, model)
    base_a = config.weights.resolve()[0] if config.weights is not None else 1.0
    setup = setup_from_states(model, u_l, u_r, a=base_a, sigma=sigma, family=family)
    opts = config.weight_range
    cert = find_weight_range(setup, opts.side, opts.bracket, budget=opts.budget,
                             seed=config.seed, surface_samples=opts.surface_samples,
                             grid_points=opts.grid_points,
                             h2_kwargs={"families": config.h2.families,
                                        "samples_per_curve": config.h2.samples_per_curve,
                                        "max_seed_samples": config.h2.max_seed_samples})
    out = _cert_output("certificate_weight_range.json", cert, config_hash, config.seed)
    empty = bool(cert.values.get("empty"))
    status = "violation" if empty else "pass"
    summary = {"side": opts.side, "a_star": cert.values.get("a_star"), "empty": empty}
    return RunResult(status=status,
                     message=("empty weight range: violations everywhere" if empty
                              else f"boundary localized near {cert.values.get('a_star')}"),
                     config_sha256=config_hash, seed=config.seed,
                     outputs=[out], summary=summary)


def _task_simulate(config: RunConfig, config_hash: str) -> RunResult:
    model = _build_model(config)
    u_l, u_r, sigma, family = _resolve_pair(config, model)
    if config.weights is None:
        raise PreconditionError("simulate needs weights")
    a = config.weights.resolve()[0]
    setup = setup_from_states(model, u_l, u_r, a=a, sigma=sigma, family=family)
    opts = config.simulate
    pert = opts.perturbation
    if pert.kind == "none":
        profile = step_profile(setup)
    else:
        if pert.component >= model.n:
            raise PreconditionError(f"perturbation component {pert.component} out of "
                                    f"range for model with n={model.n}")
        profile = bump_profile(setup, pert.amplitude, pert.component, pert.x0, pert.x1)
    result = run_contraction_experiment(
        setup, profile, t_final=opts.t_final, n_cells=opts.n_cells,
        epsilon=opts.epsilon, x_min=opts.x_min, x_max=opts.x_max, cfl=opts.cfl,
        c_scheme=opts.c_scheme)
    result.config = config.model_dump(mode="json")
    outputs = [
        _csv_output("timeseries.csv", result.to_csv(), config_hash),
        _json_output("run_header.json", result.header(), config_hash, config.seed),
    ]
    summary = {
        "max_positive_increment": result.max_positive_increment,
        "tol_scheme": result.tol_scheme,
        "monotone_within_tolerance": result.monotone_within_tolerance,
        "final_e_a": float(result.e_a[-1]),
        "final_shift": float(result.shifts[-1]),
    }
    return RunResult(status="pass", message="run completed",
                     config_sha256=config_hash, seed=config.seed,
                     outputs=outputs, summary=summary)


_TASKS = {
    "identities": _task_identities,
    "trace": _task_trace,
    "classify": _task_classify,
    "check-res": _task_check_res,
    "no-contraction": _task_no_contraction,
    "weight-range": _task_weight_range,
    "simulate": _task_simulate,
}


def run_task(config: RunConfig) -> RunResult:
    config_hash = config.sha256()
    try:
        return _TASKS[config.task](config, config_hash)
    except NotApplicableError as err:
        return RunResult(status="not-applicable", message=str(err),
                         config_sha256=config_hash, seed=config.seed)
    except ShockLabError as err:
        return RunResult(status="error", message=f"{type(err).__name__}: {err}",
                         config_sha256=config_hash, seed=config.seed)
    except ValueError as err:
        return RunResult(status="error", message=f"ValueError: {err}",
                         config_sha256=config_hash, seed=config.seed)
