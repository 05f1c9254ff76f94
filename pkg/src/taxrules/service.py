"""HTTP facade: upload artifacts, run mining and generalization, query and
download results. The wire documents are the same canonical formats that the
CLI writes, so both frontends produce byte-identical results."""
from __future__ import annotations

import warnings as _warnings
from pathlib import Path
from typing import Optional

from fastapi import Body, FastAPI, HTTPException, Query, Request
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from . import _kernels, formats
from .core import MiningParams, Side
from .formats import KINDS, FormatWarning, ParseError
from .generalize import GartOptions, generalize
from .measures import UnknownMeasureError
from .miner import mine
from .query import (
    MeasurePredicate,
    NotAvailableError,
    QueryError,
    RuleQuery,
    drilldown_expanded,
    drilldown_sources,
    export_view,
    run_query,
)
from .store import ArtifactStore, NotFoundError


class MineRequest(BaseModel):
    dataset_id: str
    min_support: float = 0.5
    min_confidence: float = 0.5
    max_items: int = 5


class GeneralizeOptions(BaseModel):
    max_level: Optional[int] = None
    merge_only: bool = False


class GeneralizeRequest(BaseModel):
    ruleset_id: str
    taxonomyset_id: str
    side: str = "lhs"
    dataset_id: Optional[str] = None
    options: GeneralizeOptions = GeneralizeOptions()


def _view_wire(view) -> dict:
    g = view.rule
    selected = view.selected_measures or tuple(view.measures.as_dict())
    return {
        "key": view.key,
        "lhs": list(g.lhs),
        "rhs": list(g.rhs),
        "side": g.side.value,
        "generalized_items": list(g.generalized_items),
        "rendered": g.render(),
        "sources_count": len(g.sources),
        "measures": {name: view.measures.get(name) for name in selected},
        "flags": {
            "below_min_support": view.flags.below_min_support,
            "below_min_confidence": view.flags.below_min_confidence,
        },
        "links": dict(view.links),
    }


def create_app(store_root: Path | str) -> FastAPI:
    app = FastAPI(title="taxrules", version="0.1.0")
    # the web console may be served from a different origin than the API
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    store = ArtifactStore(store_root)

    def _bad(status: int, message: str):
        raise HTTPException(status_code=status, detail=message)

    def _load(artifact_id: str, kind: str):
        try:
            meta = store.meta(artifact_id)
        except NotFoundError as e:
            _bad(404, str(e))
        if meta["kind"] != kind:
            _bad(400, f"artifact {artifact_id} has kind {meta['kind']!r}, expected {kind!r}")
        return formats.PARSERS[kind](store.body(artifact_id))

    @app.get("/health")
    def health():
        return {"status": "ok", "kernel_backend": _kernels.BACKEND}

    @app.post("/artifacts/{kind}", status_code=201)
    async def create_artifact(kind: str, request: Request, name: str = ""):
        if kind not in KINDS:
            _bad(400, f"unknown artifact kind {kind!r}; valid: {', '.join(KINDS)}")
        body = (await request.body()).decode("utf-8")
        try:
            with _warnings.catch_warnings():
                _warnings.simplefilter("ignore", FormatWarning)
                formats.PARSERS[kind](body)
        except (ParseError, ValueError) as e:
            _bad(422, str(e))
        return store.put(kind, name, body)

    @app.get("/artifacts/{artifact_id}")
    def get_artifact(artifact_id: str):
        try:
            return store.meta(artifact_id)
        except NotFoundError as e:
            _bad(404, str(e))

    @app.get("/artifacts/{artifact_id}/raw", response_class=PlainTextResponse)
    def download_artifact(artifact_id: str):
        try:
            return store.body(artifact_id)
        except NotFoundError as e:
            _bad(404, str(e))

    @app.post("/mine")
    def run_mine(req: MineRequest):
        db = _load(req.dataset_id, "transactions")
        try:
            params = MiningParams(req.min_support, req.min_confidence, req.max_items)
            ruleset = mine(db, params)
        except ValueError as e:
            _bad(422, str(e))
        meta = store.put("ruleset", f"mined from {req.dataset_id}", formats.write_ruleset(ruleset))
        return {"ruleset_id": meta["id"], "rule_count": len(ruleset)}

    @app.post("/generalize")
    def run_generalization(req: GeneralizeRequest):
        rules = _load(req.ruleset_id, "ruleset")
        taxes = _load(req.taxonomyset_id, "taxonomy")
        db = _load(req.dataset_id, "transactions") if req.dataset_id else None
        try:
            side = Side.parse(req.side)
            opts = GartOptions(req.options.max_level, req.options.merge_only)
        except ValueError as e:
            _bad(422, str(e))
        run_id = store.new_run_id()
        record = {
            "id": run_id,
            "status": "pending",
            "ruleset_id": req.ruleset_id,
            "taxonomyset_id": req.taxonomyset_id,
            "dataset_id": req.dataset_id,
            "side": side.value,
            "options": {"max_level": opts.max_level, "merge_only": opts.merge_only},
            "result_id": None,
            "warnings": [],
        }
        try:
            result = generalize(rules, taxes, side, opts, db)
            meta = store.put(
                "generalized-ruleset", f"run {run_id}", formats.write_generalized(result)
            )
            record.update(
                status="done",
                result_id=meta["id"],
                warnings=list(result.warnings),
                input_count=len(rules),
                output_count=len(result),
                downloads={
                    "dataset": req.dataset_id,
                    "ruleset": req.ruleset_id,
                    "generalized_ruleset": meta["id"],
                    "taxonomy_set": req.taxonomyset_id,
                },
            )
        except ValueError as e:
            record.update(status="failed", warnings=[str(e)])
        store.put_run(record)
        if record["status"] == "failed":
            _bad(422, record["warnings"][0])
        return record

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        try:
            return store.run(run_id)
        except NotFoundError as e:
            _bad(404, str(e))

    def _parse_query(
        item, lhs_item, rhs_item, measure, where, sort, order, limit, offset, exact
    ) -> RuleQuery:
        try:
            return RuleQuery(
                lhs_contains=frozenset(lhs_item),
                rhs_contains=frozenset(rhs_item),
                any_side_contains=frozenset(item),
                measure_predicates=tuple(MeasurePredicate.parse(w) for w in where),
                selected_measures=tuple(measure),
                sort_by=sort,
                descending=order == "desc",
                limit=limit,
                offset=offset,
                exact_match=exact,
            )
        except (QueryError, UnknownMeasureError) as e:
            _bad(400, str(e))

    def _result_views(result_id: str, q: RuleQuery):
        gs = _load(result_id, "generalized-ruleset")
        return gs, run_query(gs, q)

    @app.get("/results/{result_id}/rules")
    def query_rules(
        result_id: str,
        item: list[str] = Query(default=[]),
        lhs_item: list[str] = Query(default=[]),
        rhs_item: list[str] = Query(default=[]),
        measure: list[str] = Query(default=[]),
        where: list[str] = Query(default=[]),
        sort: Optional[str] = None,
        order: str = "asc",
        limit: Optional[int] = None,
        offset: int = 0,
        exact: bool = False,
    ):
        q = _parse_query(item, lhs_item, rhs_item, measure, where, sort, order, limit, offset, exact)
        gs, views = _result_views(result_id, q)
        return {"total": len(gs), "matched": len(views), "rules": [_view_wire(w) for w in views]}

    @app.get("/results/{result_id}/export", response_class=PlainTextResponse)
    def export_rules(
        result_id: str,
        item: list[str] = Query(default=[]),
        lhs_item: list[str] = Query(default=[]),
        rhs_item: list[str] = Query(default=[]),
        measure: list[str] = Query(default=[]),
        where: list[str] = Query(default=[]),
        sort: Optional[str] = None,
        order: str = "asc",
        limit: Optional[int] = None,
        offset: int = 0,
        exact: bool = False,
    ):
        q = _parse_query(item, lhs_item, rhs_item, measure, where, sort, order, limit, offset, exact)
        _, views = _result_views(result_id, q)
        return export_view(views)

    def _find_view(result_id: str, key: str):
        gs = _load(result_id, "generalized-ruleset")
        for view in run_query(gs, RuleQuery()):
            if view.key == key:
                return gs, view
        _bad(404, f"rule {key} not found in result {result_id}")

    @app.get("/results/{result_id}/rules/{key}/expanded")
    def rule_expanded(result_id: str, key: str):
        gs, view = _find_view(result_id, key)
        try:
            expansions = drilldown_expanded(view, gs.taxonomy_set)
        except NotAvailableError as e:
            _bad(404, str(e))
        return {"expansions": [{"lhs": list(r.lhs), "rhs": list(r.rhs)} for r in expansions]}

    @app.get("/results/{result_id}/rules/{key}/sources")
    def rule_sources(result_id: str, key: str):
        _, view = _find_view(result_id, key)
        try:
            sources = drilldown_sources(view)
        except NotAvailableError as e:
            _bad(404, str(e))
        return {
            "sources": [
                {"lhs": list(r.lhs), "rhs": list(r.rhs), "support": r.support, "confidence": r.confidence}
                for r in sources
            ]
        }

    @app.get("/results/{result_id}/rules/{key}/measures")
    def rule_measures(result_id: str, key: str):
        _, view = _find_view(result_id, key)
        return {
            "measures": view.measures.as_dict(),
            "flags": {
                "below_min_support": view.flags.below_min_support,
                "below_min_confidence": view.flags.below_min_confidence,
            },
        }

    return app
