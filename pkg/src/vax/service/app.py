"""Read-only HTTP API over one artifact set, backing the analyst UI.

Every response derives from the immutable loaded session; requests never
mutate state, so any request sequence is replayable byte for byte.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from fastapi import Depends, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from ..errors import InputError
from ..explain import (
    FilterCriteria,
    cumulative_coverage,
    filter_patterns,
    histogram_counts,
    order_rows,
)
from .models import (
    DatasetMeta,
    HistogramCell,
    InstancePattern,
    MapPoint,
    MapResponse,
    MetaResponse,
    PatternRow,
    PatternsResponse,
    Selector,
    SelectionRequest,
    SelectionResponse,
    VariableMeta,
)
from .session import Session

SCHEMA_MODELS = {
    "meta": MetaResponse,
    "patterns": PatternsResponse,
    "map": MapResponse,
    "selection_request": SelectionRequest,
    "selection_response": SelectionResponse,
}


def create_app(
    artifacts_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="vax service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.session = None
    if artifacts_dir is not None:
        app.state.session = Session.load(artifacts_dir)

    def current_session() -> Session:
        session = app.state.session
        if session is None:
            raise HTTPException(status_code=503, detail="no artifact set loaded")
        return session

    @app.get("/api/meta", response_model=MetaResponse, response_model_by_alias=True)
    def get_meta(session: Session = Depends(current_session)) -> MetaResponse:
        dataset = session.dataset
        counts = {
            name: dataset.class_size(c) for c, name in enumerate(dataset.classes)
        }
        variables = [
            VariableMeta(**entry) for entry in session.matrix_payload["variables"]
        ]
        return MetaResponse(
            dataset=DatasetMeta(
                n_rows=dataset.n_rows,
                n_variables=dataset.n_variables,
                classes=list(dataset.classes),
                class_counts=counts,
                variables=variables,
            ),
            manifest=session.manifest,
        )

    @app.get(
        "/api/patterns", response_model=PatternsResponse, response_model_by_alias=True
    )
    def get_patterns(
        classes: str | None = Query(default=None),
        min_support: float | None = Query(default=None, ge=0.0, le=1.0),
        coverage_target: float | None = Query(default=None, ge=0.0, le=1.0),
        instances: str | None = Query(default=None),
        order: str = Query(default="support"),
        all_cells: bool = Query(default=False),
        session: Session = Depends(current_session),
    ) -> PatternsResponse:
        dataset = session.dataset
        criteria = FilterCriteria(min_support=min_support, coverage_target=coverage_target)
        if classes is not None:
            wanted = []
            for name in classes.split(","):
                name = name.strip()
                if name not in dataset.classes:
                    raise HTTPException(status_code=400, detail=f"unknown class {name!r}")
                wanted.append(dataset.classes.index(name))
            criteria.classes = wanted
        if instances is not None:
            try:
                criteria.instance_ids = [
                    int(chunk) for chunk in instances.split(",") if chunk.strip()
                ]
            except ValueError as exc:
                raise HTTPException(status_code=400, detail="instances must be integer ids") from exc
        try:
            subset = filter_patterns(session.jep_set, criteria, dataset)
            permutation = order_rows(subset, order)
            coverage_in_order = cumulative_coverage(subset, permutation)
        except InputError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        by_id_pattern = {row["id"]: row for row in session.patterns_payload["patterns"]}
        by_id_cells = {
            row["pattern_id"]: row["cells"] for row in session.matrix_payload["rows"]
        }
        edges_by_name = {
            entry["name"]: entry["edges"] for entry in session.matrix_payload["variables"]
        }
        rows = []
        for position, idx in enumerate(permutation):
            pattern = subset.patterns[idx]
            payload = by_id_pattern[pattern.id]
            cells = [HistogramCell(**cell) for cell in by_id_cells[pattern.id]]
            if all_cells:
                have = {cell.variable for cell in cells}
                member_rows = np.asarray(pattern.supported_rows)
                for v, name in enumerate(dataset.variable_names):
                    if name in have:
                        continue
                    counts = histogram_counts(
                        dataset.instances[member_rows, v], np.asarray(edges_by_name[name])
                    )
                    cells.append(HistogramCell(variable=name, counts=[int(c) for c in counts]))
            rows.append(
                PatternRow(
                    pattern_id=pattern.id,
                    **{"class": payload["class"]},
                    support=pattern.support,
                    confidence=pattern.confidence,
                    fet_p=payload["fet_p"],
                    fet_significant=payload["fet_p"] < 0.05,
                    cumulative_coverage=coverage_in_order[position],
                    aggregated_from=pattern.aggregated_from,
                    selectors=[Selector(**s) for s in payload["selectors"]],
                    supported_instance_ids=payload["supported_instance_ids"],
                    cells=cells,
                )
            )
        return PatternsResponse(
            order=order,
            total_patterns=len(session.jep_set.patterns),
            coverage=subset.coverage,
            rows=rows,
        )

    @app.get("/api/map", response_model=MapResponse, response_model_by_alias=True)
    def get_map(
        lam: str = Query(default="auto", alias="lambda"),
        session: Session = Depends(current_session),
    ) -> MapResponse:
        if lam == "auto":
            if session.resolved_blend is None:
                raise HTTPException(status_code=400, detail="no embedding in this artifact set")
            requested = float(session.resolved_blend)
        else:
            try:
                requested = float(lam)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail="lambda must be a number or 'auto'") from exc
            if not 0.0 <= requested <= 1.0:
                raise HTTPException(status_code=400, detail="lambda out of range [0, 1]")
        try:
            payload = session.nearest_map(requested)
        except InputError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return MapResponse(
            lambda_requested=lam,
            lambda_used=payload["lambda"],
            stress=payload["stress"],
            silhouette_inverted=payload["silhouette_inverted"],
            points=[MapPoint(**point) for point in payload["points"]],
        )

    @app.post(
        "/api/selection", response_model=SelectionResponse, response_model_by_alias=True
    )
    def post_selection(
        request: SelectionRequest, session: Session = Depends(current_session)
    ) -> SelectionResponse:
        known = set(session.dataset.instance_ids)
        unknown = [iid for iid in request.instance_ids if iid not in known]
        if unknown:
            raise HTTPException(status_code=400, detail=f"unknown instance ids: {unknown}")
        instances = []
        pattern_ids: list[int] = []
        unsupported: list[int] = []
        for iid in request.instance_ids:
            pid = session.instance_to_pattern.get(iid)
            instances.append(InstancePattern(instance_id=iid, pattern_id=pid))
            if pid is None:
                unsupported.append(iid)
            elif pid not in pattern_ids:
                pattern_ids.append(pid)
        return SelectionResponse(
            instances=instances,
            pattern_ids=pattern_ids,
            unsupported_instance_ids=unsupported,
            suggested_filter={"instances": request.instance_ids},
        )

    @app.get("/api/schema")
    def get_schema() -> dict:
        return {name: model.model_json_schema() for name, model in SCHEMA_MODELS.items()}

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
