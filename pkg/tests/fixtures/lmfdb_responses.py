"""Frozen LMFDB API payloads for testing."""

from typing import Any


class MockLmfdbResponses:
    """Collection of canned ec_curvedata / ec_mwbsd responses."""

    @staticmethod
    def curvedata_rows() -> list[dict[str, Any]]:
        return [
            {
                "lmfdb_label": "11.a1",
                "conductor": 11,
                "rank": 0,
                "torsion": 5,
                "sha": 1,
                "regulator": 1.0,
            },
            {
                "lmfdb_label": "37.a1",
                "conductor": 37,
                "rank": 1,
                "torsion": 1,
                "sha": 1,
                "regulator": 0.0511114082399688,
            },
        ]

    @staticmethod
    def mwbsd_rows() -> list[dict[str, Any]]:
        return [
            {
                "lmfdb_label": "11.a1",
                "special_value": 0.253841860855911,
                "real_period": 1.26920930427955,
                "tamagawa_product": 5,
            },
            {
                "lmfdb_label": "37.a1",
                "special_value": 0.305999773834052,
                "real_period": 5.98691729246392,
                "tamagawa_product": 1,
            },
        ]

    @staticmethod
    def inconsistent_mwbsd_rows() -> list[dict[str, Any]]:
        """37.a1 with a special value ten times too large."""
        rows = MockLmfdbResponses.mwbsd_rows()
        rows[1] = {**rows[1], "special_value": 3.05999773834052}
        return rows

    @staticmethod
    def page(rows: list[dict[str, Any]]) -> dict[str, Any]:
        return {"data": rows}

    @staticmethod
    def drifted_curvedata_rows() -> list[dict[str, Any]]:
        """Rows whose |Sha| column was renamed upstream."""
        rows = []
        for row in MockLmfdbResponses.curvedata_rows():
            renamed = {k: v for k, v in row.items() if k != "sha"}
            renamed["analytic_sha"] = row["sha"]
            rows.append(renamed)
        return rows
