"""LMFDB REST API client for elliptic curves over Q.

Two tables are joined on ``lmfdb_label``: ``ec_curvedata`` (conductor, rank,
torsion, |Sha|, regulator) and ``ec_mwbsd`` (special value, real period,
Tamagawa product). Results are cached on disk under a hash of the query so
repeated runs never touch the network.
"""

import asyncio
import json
from pathlib import Path
from typing import Any, Optional

import httpx
from pydantic import ValidationError

from ..config import Settings, get_settings
from ..core.exceptions import ConfigError, EmptyResultError, NetworkError, SchemaDriftError
from ..core.schemas.curves import CurveRecord, Dataset
from ..core.schemas.experiments import LmfdbQuery
from ..core.utils.hashing import canonical_json, sha256_hex
from ..observability.logger import get_logger
from .bsd import validate_record

logger = get_logger(__name__)

CURVEDATA_TABLE = "ec_curvedata"
MWBSD_TABLE = "ec_mwbsd"
CURVEDATA_FIELDS: tuple[str, ...] = (
    "lmfdb_label",
    "conductor",
    "rank",
    "torsion",
    "sha",
    "regulator",
)
MWBSD_FIELDS: tuple[str, ...] = (
    "lmfdb_label",
    "special_value",
    "real_period",
    "tamagawa_product",
)


def _literal(value: Any) -> str:
    """Encode a filter value as an LMFDB ``py`` literal."""
    return "py" + json.dumps(value, separators=(",", ":"))


def query_filters(query: LmfdbQuery) -> dict[str, str]:
    """Translate a query into ``ec_curvedata`` filter parameters."""
    filters: dict[str, str] = {}
    if query.label is not None:
        filters["lmfdb_label"] = _literal(query.label)
    bounds: dict[str, int] = {}
    if query.conductor_min is not None:
        bounds["$gte"] = query.conductor_min
    if query.conductor_max is not None:
        bounds["$lte"] = query.conductor_max
    if bounds:
        filters["conductor"] = _literal(bounds)
    if query.rank is not None:
        filters["rank"] = _literal(query.rank)
    if query.sha_order is not None:
        filters["sha"] = _literal(query.sha_order)
    return filters


def cache_key(api_url: str, query: LmfdbQuery, limit: int) -> str:
    payload = {"api": api_url, "query": query.model_dump(mode="json"), "limit": limit}
    return sha256_hex(canonical_json(payload))


def _require(row: dict[str, Any], name: str, table: str) -> Any:
    if name not in row:
        raise SchemaDriftError(name, table)
    return row[name]


def record_from_rows(curve: dict[str, Any], bsd: dict[str, Any]) -> CurveRecord:
    """Map one joined pair of API rows to a CurveRecord.

    Raises:
        SchemaDriftError: An expected field is missing from either row
        pydantic.ValidationError: The mapped record violates its invariants
    """
    return CurveRecord(
        label=_require(curve, "lmfdb_label", CURVEDATA_TABLE),
        conductor=int(_require(curve, "conductor", CURVEDATA_TABLE)),
        rank=int(_require(curve, "rank", CURVEDATA_TABLE)),
        torsion_order=int(_require(curve, "torsion", CURVEDATA_TABLE)),
        sha_order=int(_require(curve, "sha", CURVEDATA_TABLE)),
        regulator=float(_require(curve, "regulator", CURVEDATA_TABLE)),
        special_value=float(_require(bsd, "special_value", MWBSD_TABLE)),
        real_period=float(_require(bsd, "real_period", MWBSD_TABLE)),
        tamagawa_product=int(_require(bsd, "tamagawa_product", MWBSD_TABLE)),
    )


class LmfdbClient:
    """Async client for the LMFDB elliptic-curve API.

    Manages a single httpx.AsyncClient; transport errors and 5xx responses are
    retried with exponential backoff.
    """

    def __init__(
        self,
        api_url: str,
        cache_dir: Path | None = None,
        timeout: float = 30.0,
        page_size: int = 100,
        max_retries: int = 3,
        retry_backoff_seconds: float = 1.0,
        tolerance: float = 1e-4,
    ):
        self._api_url = api_url.rstrip("/")
        self._cache_dir = cache_dir
        self._timeout = timeout
        self._page_size = page_size
        self._max_retries = max_retries
        self._backoff = retry_backoff_seconds
        self._tolerance = tolerance
        self._client: Optional[httpx.AsyncClient] = None

    @classmethod
    def from_settings(cls, settings: Settings) -> "LmfdbClient":
        return cls(
            api_url=settings.lmfdb_api_url,
            cache_dir=settings.lmfdb_cache_dir,
            timeout=settings.lmfdb_timeout,
            page_size=settings.lmfdb_page_size,
            max_retries=settings.lmfdb_max_retries,
            retry_backoff_seconds=settings.lmfdb_retry_backoff_seconds,
            tolerance=settings.bsd_tolerance,
        )

    async def _get_client(self) -> httpx.AsyncClient:
        """Get or create HTTP client."""
        if self._client is None:
            self._client = httpx.AsyncClient(
                timeout=self._timeout,
                headers={"Accept": "application/json"},
            )
        return self._client

    async def close(self) -> None:
        """Close HTTP client."""
        if self._client:
            await self._client.aclose()
            self._client = None

    async def _get_json(self, table: str, params: dict[str, Any]) -> dict[str, Any]:
        client = await self._get_client()
        url = f"{self._api_url}/{table}/"
        last_error: Exception | None = None
        for attempt in range(self._max_retries + 1):
            try:
                response = await client.get(url, params=params)
                if response.status_code >= 500:
                    raise httpx.HTTPStatusError(
                        f"server error {response.status_code}",
                        request=response.request,
                        response=response,
                    )
                response.raise_for_status()
                body: dict[str, Any] = response.json()
                return body
            except httpx.HTTPStatusError as exc:
                if exc.response.status_code < 500:
                    raise NetworkError(
                        f"LMFDB request rejected with HTTP {exc.response.status_code}",
                        {"table": table},
                    ) from exc
                last_error = exc
            except (httpx.TransportError, ValueError) as exc:
                last_error = exc

            logger.warning(
                "LMFDB request failed",
                table=table,
                attempt=attempt + 1,
                error=str(last_error),
            )
            if attempt < self._max_retries:
                await asyncio.sleep(self._backoff * (2**attempt))

        raise NetworkError(
            f"LMFDB request to {table} failed after {self._max_retries + 1} attempt(s)",
            {"table": table, "error": str(last_error)},
        )

    async def fetch_table(
        self, table: str, filters: dict[str, str], fields: tuple[str, ...], limit: int
    ) -> list[dict[str, Any]]:
        """Page through ``table`` until ``limit`` rows or the end of the results."""
        rows: list[dict[str, Any]] = []
        offset = 0
        while len(rows) < limit:
            page_limit = min(self._page_size, limit - len(rows))
            params: dict[str, Any] = {
                **filters,
                "_format": "json",
                "_fields": ",".join(fields),
                "_offset": offset,
                "_limit": page_limit,
            }
            body = await self._get_json(table, params)
            if "data" not in body:
                raise SchemaDriftError("data", table)
            page: list[dict[str, Any]] = body["data"]
            rows.extend(page[:page_limit])
            logger.debug("Fetched LMFDB page", table=table, offset=offset, rows=len(page))
            if len(page) < page_limit:
                break
            offset += len(page)
        return rows

    async def _fetch_bsd_rows(self, labels: list[str]) -> dict[str, dict[str, Any]]:
        joined: dict[str, dict[str, Any]] = {}
        for start in range(0, len(labels), self._page_size):
            chunk = labels[start : start + self._page_size]
            filters = {"lmfdb_label": _literal({"$in": chunk})}
            for row in await self.fetch_table(MWBSD_TABLE, filters, MWBSD_FIELDS, len(chunk)):
                joined[_require(row, "lmfdb_label", MWBSD_TABLE)] = row
        return joined

    def _cache_path(self, key: str) -> Path | None:
        return None if self._cache_dir is None else self._cache_dir / f"{key}.json"

    async def fetch_curves(self, query: LmfdbQuery, limit: int) -> list[CurveRecord]:
        """Fetch, join and validate curves matching ``query``.

        Records failing validation are dropped and counted in the log.

        Raises:
            EmptyResultError: ``limit`` is 0 or nothing matched
            NetworkError: Retries exhausted
            SchemaDriftError: A response lacks an expected field
        """
        if limit <= 0:
            raise EmptyResultError("LMFDB query limit must be positive", {"limit": limit})

        key = cache_key(self._api_url, query, limit)
        cached = self._cache_path(key)
        if cached is not None and cached.exists():
            logger.info("LMFDB cache hit", key=key)
            payload = json.loads(cached.read_text(encoding="utf-8"))
            return [CurveRecord.model_validate(item) for item in payload]

        curve_rows = await self.fetch_table(
            CURVEDATA_TABLE, query_filters(query), CURVEDATA_FIELDS, limit
        )
        labels = [_require(row, "lmfdb_label", CURVEDATA_TABLE) for row in curve_rows]
        bsd_rows = await self._fetch_bsd_rows(labels)

        records: list[CurveRecord] = []
        dropped = 0
        for row in curve_rows:
            label = row["lmfdb_label"]
            if label not in bsd_rows:
                dropped += 1
                continue
            try:
                record = record_from_rows(row, bsd_rows[label])
            except ValidationError:
                dropped += 1
                continue
            if not validate_record(record, self._tolerance).passed:
                dropped += 1
                continue
            records.append(record)

        if dropped:
            logger.warning("Dropped LMFDB rows failing validation", dropped=dropped)
        if not records:
            raise EmptyResultError("LMFDB query returned no valid records", {"key": key})

        if cached is not None:
            cached.parent.mkdir(parents=True, exist_ok=True)
            cached.write_text(
                json.dumps([rec.model_dump(mode="json") for rec in records]), encoding="utf-8"
            )
        logger.info("Fetched LMFDB curves", records=len(records), key=key)
        return records


async def fetch_lmfdb_async(
    query: LmfdbQuery, limit: int, settings: Settings | None = None
) -> Dataset:
    settings = settings or get_settings()
    if limit > settings.lmfdb_max_limit:
        raise ConfigError(
            f"limit {limit} exceeds the configured cap {settings.lmfdb_max_limit}",
            {"limit": limit},
        )
    client = LmfdbClient.from_settings(settings)
    try:
        records = await client.fetch_curves(query, limit)
    finally:
        await client.close()
    source = f"lmfdb:{canonical_json(query.model_dump(mode='json', exclude_none=True))}"
    return Dataset(records=tuple(records), source=source)


def fetch_lmfdb(query: LmfdbQuery, limit: int, settings: Settings | None = None) -> Dataset:
    """Synchronous wrapper around :func:`fetch_lmfdb_async`."""
    return asyncio.run(fetch_lmfdb_async(query, limit, settings))
