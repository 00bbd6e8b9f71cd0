"""Analysis pipeline and deterministic report assembly.

Every certificate that enters a report is first re-verified by the
independent checker; a failure raises InternalInvariantError, which the
CLI maps to exit code 2.  All numbers serialize as rational strings (or
"-inf"/"+inf"/"absent"), atoms are always referenced by label, and the
section order is fixed, so identical inputs yield byte-identical reports.
"""

from __future__ import annotations

import json
from fractions import Fraction
from . import verify
from .arbitrage import detect_NA_agent, detect_NA_global, detect_NCA, find_emm_vector, polar_witness
from .cones import ExchangeCone, cone_add, make_Y0
from .errors import FairnessUnavailable, InternalInvariantError
from .ext import Ext
from .market import MarketModel, gains_basis
from .model_io import ModelFile
from .pricing import (dual_rho_Y, fairness_allocation, pi_N_plus, pi_Y_minus,
                      pi_Y_plus, rho_agent_plus, rho_agent_plus_dual, rho_N_minus,
                      rho_N_plus, rho_Y_minus, rho_Y_plus, value_of_cooperation)

ALL_SECTIONS = ("na", "nca", "ftap", "price", "fairness")


def _val(v) -> str:
    if isinstance(v, Ext):
        return str(v)
    if v is None:
        return "absent"
    return str(Fraction(v))


def _row_obj(market: MarketModel, row) -> dict:
    return {market.space.atoms[w]: _val(row[w]) for w in range(market.n_atoms)}


def _rows_obj(market: MarketModel, rows) -> list:
    return [_row_obj(market, r) for r in rows]


def _strategy_obj(market: MarketModel, agent: int, coeffs) -> list:
    gens = gains_basis(market, agent)
    return [{"position": g.label(market), "coefficient": _val(c)}
            for g, c in zip(gens, coeffs) if c]


def _arbitrage_obj(market, cert, cone=None) -> dict:
    if not cert.found:
        out = {"arbitrage": False,
               "dual_witness": _rows_obj(market, cert.dual_witness)}
        return out
    agents = range(market.n_agents) if cone is not None else [None]
    strategies = []
    for idx, i in enumerate(agents):
        if i is None:
            labels = [{"position": g.label(market), "coefficient": _val(c)}
                      for g, c in zip(_global_gens(market), cert.strategy_coeffs[0]) if c]
        else:
            labels = _strategy_obj(market, i, cert.strategy_coeffs[idx])
        strategies.append(labels)
    out = {"arbitrage": True, "strategies": strategies,
           "gains": _rows_obj(market, cert.gains_rows)}
    if cone is not None and cert.exchange is not None:
        out["exchange"] = _rows_obj(market, cert.exchange.rows)
    return out


def _global_gens(market):
    from .market import full_gains_basis

    return full_gains_basis(market)


def _flags_obj(cone: ExchangeCone) -> dict:
    return {
        "is_zero_sum": cone.meta.is_zero_sum,
        "contains_RN0": cone.meta.contains_RN0,
        "measurable_at": cone.meta.measurable_at,
        "rays": len(cone.rays),
        "lineality": len(cone.lineality),
    }


def analyze(model: ModelFile, sections=None) -> dict:
    market = model.market
    cone = model.exchange
    wanted = set(sections or ALL_SECTIONS)

    report = {
        "model": {
            "atoms": list(market.space.atoms),
            "prob": [_val(p) for p in market.space.prob],
            "periods": market.T,
            "agents": market.n_agents,
            "assets": [a.name for a in market.assets],
            "exchange": _flags_obj(cone) if cone is not None else "absent",
        },
        "validation": {"status": "ok"},
    }

    na_agent_results = []
    na_global_result = None
    if wanted & {"na", "nca", "ftap", "price", "fairness"}:
        for i in range(market.n_agents):
            cert = detect_NA_agent(market, i)
            if cert.found:
                verify.verify_arbitrage_found(market, cert, agent=i)
            else:
                verify.verify_single_market_witness(market, cert.dual_witness[0], agent=i)
            na_agent_results.append(cert)
        na_global_result = detect_NA_global(market)
        if na_global_result.found:
            verify.verify_arbitrage_found(market, na_global_result)
        else:
            verify.verify_single_market_witness(market, na_global_result.dual_witness[0])

    if "na" in wanted:
        report["na"] = {
            "agents": [dict(agent=market_agent_name(i), **_arbitrage_obj(market, c))
                       for i, c in enumerate(na_agent_results)],
            "global": _arbitrage_obj(market, na_global_result),
        }

    nca_cert = None
    widened_cert = None
    if cone is not None and wanted & {"nca", "ftap", "price", "fairness"}:
        nca_cert = detect_NCA(market, cone)
        if nca_cert.found:
            verify.verify_arbitrage_found(market, nca_cert, cone=cone)
        else:
            verify.verify_polar_witness(market, cone, nca_cert.dual_witness)
        widened = cone_add(market, cone, make_Y0(market, 0))
        widened_cert = detect_NCA(market, widened)

    if "nca" in wanted:
        if cone is None:
            report["nca"] = {"status": "skipped", "reason": "no exchange cone in model"}
        else:
            report["nca"] = _arbitrage_obj(market, nca_cert, cone=cone)
            report["nca"]["with_deterministic_transfers"] = {
                "arbitrage": widened_cert.found}

    mv = None
    zpos = None
    if cone is not None and wanted & {"ftap", "price", "fairness"}:
        mv = find_emm_vector(market, cone)
        if mv is not None:
            verify.verify_measure_vector(market, cone, mv, strict=True)
        zpos = polar_witness(market, cone)
        if zpos is not None:
            verify.verify_polar_witness(market, cone, zpos.rows, strict=True)
        # two-sided consistency of the finite-market equivalences
        if (zpos is not None) == nca_cert.found:
            raise InternalInvariantError("polar witness disagrees with detection")
        if cone.meta.contains_RN0 and (mv is not None) == nca_cert.found:
            raise InternalInvariantError("measure vector disagrees with detection")

    if "ftap" in wanted:
        if cone is None:
            report["ftap"] = {"status": "skipped", "reason": "no exchange cone in model"}
        else:
            normalization = "probability" if cone.meta.contains_RN0 else "none"
            if (not cone.meta.contains_RN0 and isinstance(model.raw.get("exchange"), dict)
                    and model.raw["exchange"].get("kind") == "grouping"):
                normalization = "grouping-normalized"
            report["ftap"] = {
                "measure_vector": ("absent" if mv is None
                                   else _rows_obj(market, mv.densities)),
                "polar_witness": ("absent" if zpos is None
                                  else _rows_obj(market, zpos.rows)),
                "no_collective_arbitrage": not nca_cert.found,
                "normalization": normalization,
            }

    pricing_data = None
    if model.claims is not None and wanted & {"price", "fairness"}:
        pricing_data = _pricing_section(market, cone, model.claims)

    if "price" in wanted:
        if model.claims is None:
            report["pricing"] = {"status": "skipped", "reason": "no claims in model"}
        else:
            report["pricing"] = pricing_data["pricing"]
            report["cooperation"] = pricing_data["cooperation"]

    if "fairness" in wanted:
        if model.claims is None or cone is None:
            report["fairness"] = {"status": "skipped",
                                  "reason": "needs claims and an exchange cone"}
        else:
            report["fairness"] = pricing_data["fairness"]

    if (cone is not None and model.claims is not None and "price" in wanted
            and pricing_data is not None and nca_cert is not None):
        report["table"] = _summary_table(market, cone, model.claims,
                                         na_agent_results, na_global_result,
                                         nca_cert, widened_cert, mv, pricing_data)
    return report


def market_agent_name(i: int) -> str:
    return f"agent{i+1}"


def _pricing_section(market, cone, claims) -> dict:
    rho_i = []
    for i in range(market.n_agents):
        v, _ = rho_agent_plus(market, i, claims.rows[i])
        dual_v = rho_agent_plus_dual(market, i, claims.rows[i])
        if v != dual_v:
            raise InternalInvariantError("single-market duality gap")
        rho_i.append(v)
    rho_n = rho_N_plus(market, claims)
    pi_n = pi_N_plus(market, claims)
    if rho_n != sum(rho_i[1:], rho_i[0]):
        raise InternalInvariantError("per-agent prices do not sum")

    out = {
        "rho_i": [_val(v) for v in rho_i],
        "rho_N": _val(rho_n),
        "pi_N": _val(pi_n),
    }
    cooperation: object = "absent"
    fairness: object = "absent"
    if cone is not None:
        rho_y, opt = rho_Y_plus(market, cone, claims)
        pi_y, _ = pi_Y_plus(market, cone, claims)
        dual_v, dual_mv = dual_rho_Y(market, cone, claims)
        if rho_y.finite and dual_v != rho_y:
            raise InternalInvariantError("collective pricing-hedging duality gap")
        if not (rho_y <= rho_n and pi_y <= pi_n):
            raise InternalInvariantError("cooperative price exceeds stand-alone price")
        if cone.meta.contains_RN0 and rho_y != pi_y * market.n_agents:
            raise InternalInvariantError("rho != N * pi despite deterministic transfers")
        if opt is not None:
            verify.verify_primal_optimizer(market, cone, claims, opt, rho_y.value)
        if dual_mv is not None:
            verify.verify_measure_vector(market, cone, dual_mv, strict=False)
        out.update({
            "rho_Y": _val(rho_y),
            "pi_Y": _val(pi_y),
            "dual_value": _val(dual_v),
            "rho_Y_minus": _val(rho_Y_minus(market, cone, claims)),
            "pi_Y_minus": _val(pi_Y_minus(market, cone, claims)),
            "rho_N_minus": _val(rho_N_minus(market, claims)),
            "primal_optimizer": "absent" if opt is None else {
                "m": [_val(v) for v in opt.m],
                "strategies": [_strategy_obj(market, i, opt.strategy_coeffs[i])
                               for i in range(market.n_agents)],
                "exchange": _rows_obj(market, opt.exchange_rows),
            },
            "dual_optimizer": ("absent" if dual_mv is None
                               else _rows_obj(market, dual_mv.densities)),
        })
        coop = value_of_cooperation(market, cone, claims)
        cooperation = {k: _val(v) for k, v in coop.items()}
        try:
            fr = fairness_allocation(market, cone, claims)
            verify.verify_fairness(market, cone, claims, fr)
            fairness = {
                "value": _val(fr.value),
                "pricing_measures": _rows_obj(market, fr.q_hat.densities),
                "allocations": [_val(v) for v in fr.allocations],
                "m_tilde": [_val(v) for v in fr.m_tilde],
                "adjusted_exchange": _rows_obj(market, fr.y_tilde_rows),
                "per_agent_prices": [_val(v) for v in fr.per_agent_prices],
            }
        except FairnessUnavailable as e:
            fairness = {"status": "unavailable", "reason": str(e)}
    return {"pricing": out, "cooperation": cooperation, "fairness": fairness}


def _summary_table(market, cone, claims, na_agents, na_global, nca_cert,
                   widened_cert, mv, pricing_data) -> dict:
    p = pricing_data["pricing"]

    def lt(a, b):
        order = {"-inf": -1, "+inf": 1}
        if a == b:
            return False
        ka, kb = order.get(a, 0), order.get(b, 0)
        if ka != kb:
            return ka < kb
        return Fraction(a) < Fraction(b)

    return {
        "NA": not na_global.found,
        "NCA(Y)": not nca_cert.found,
        "NCA(Y+RN0)": not widened_cert.found,
        "NA_i_all": all(not c.found for c in na_agents),
        "M_Y_nonempty": mv is not None,
        "pi_Y<pi_N": lt(p.get("pi_Y", "absent"), p["pi_N"]) if "pi_Y" in p else "absent",
        "rho_Y<rho_N": lt(p.get("rho_Y", "absent"), p["rho_N"]) if "rho_Y" in p else "absent",
    }


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_text(report: dict) -> str:
    lines = []
    model = report["model"]
    lines.append(f"model: {len(model['atoms'])} atoms, T={model['periods']}, "
                 f"{model['agents']} agents, assets {', '.join(model['assets'])}")
    if "na" in report:
        nag = report["na"]["global"]["arbitrage"]
        per = [a["arbitrage"] for a in report["na"]["agents"]]
        lines.append(f"arbitrage: global={'yes' if nag else 'no'}, "
                     f"per-agent={['yes' if v else 'no' for v in per]}")
    if "nca" in report and "arbitrage" in report.get("nca", {}):
        lines.append(f"collective arbitrage: {'yes' if report['nca']['arbitrage'] else 'no'}"
                     f" (with deterministic transfers: "
                     f"{'yes' if report['nca']['with_deterministic_transfers']['arbitrage'] else 'no'})")
    if "ftap" in report and "measure_vector" in report.get("ftap", {}):
        have = report["ftap"]["measure_vector"] != "absent"
        lines.append(f"compatible martingale measure vector: {'found' if have else 'none'}")
    if "pricing" in report and "rho_N" in report.get("pricing", {}):
        pr = report["pricing"]
        lines.append(f"prices: rho_i={pr['rho_i']} rho_N={pr['rho_N']} pi_N={pr['pi_N']}")
        if "rho_Y" in pr:
            lines.append(f"        rho_Y={pr['rho_Y']} pi_Y={pr['pi_Y']} "
                         f"dual={pr['dual_value']}")
    if isinstance(report.get("cooperation"), dict):
        co = report["cooperation"]
        lines.append(f"cooperation value: selling={co['selling']} total={co['total']}")
    if "fairness" in report and isinstance(report["fairness"], dict) \
            and "allocations" in report["fairness"]:
        lines.append(f"fair allocations: {report['fairness']['allocations']}")
    if "table" in report:
        t = report["table"]
        cols = ["NA", "NCA(Y)", "NCA(Y+RN0)", "NA_i_all", "M_Y_nonempty",
                "pi_Y<pi_N", "rho_Y<rho_N"]

        def mark(v):
            return {True: "yes", False: "no"}.get(v, str(v))

        lines.append(" | ".join(cols))
        lines.append(" | ".join(mark(t[c]) for c in cols))
    return "\n".join(lines) + "\n"
