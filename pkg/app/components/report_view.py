"""
Report rendering for the verification dashboard: summary metrics, a
pass/fail chart per theorem and a witness drill-down.
"""

from typing import List

import pandas as pd
import plotly.graph_objects as go
import streamlit as st

from validations.base_validation import VerificationReport, reports_to_dataframe


def summarize_by_theorem(df: pd.DataFrame) -> pd.DataFrame:
    """Pass/fail counts per (theorem, n, cutoff) run."""
    if df.empty:
        return pd.DataFrame(columns=["Run", "Pass", "Fail"])
    df = df.assign(Run=df["Theorem"] + " n=" + df["n"].astype(str) + " D=" + df["Cutoff"].astype(str))
    counts = df.groupby(["Run", "Status"], sort=False).size().unstack(fill_value=0)
    for column in ("Pass", "Fail"):
        if column not in counts:
            counts[column] = 0
    return counts[["Pass", "Fail"]].reset_index()


def build_status_chart(summary: pd.DataFrame) -> go.Figure:
    fig = go.Figure(data=[
        go.Bar(name="Pass", y=summary["Run"], x=summary["Pass"], orientation="h",
               marker=dict(color="#10b981")),
        go.Bar(name="Fail", y=summary["Run"], x=summary["Fail"], orientation="h",
               marker=dict(color="#ef4444")),
    ])
    fig.update_layout(
        barmode="stack",
        height=max(250, 28 * len(summary)),
        xaxis_title="Sub-checks",
        yaxis={"categoryorder": "array", "categoryarray": list(summary["Run"])[::-1]},
        margin=dict(t=30, b=30, l=10, r=30),
        paper_bgcolor="rgba(0,0,0,0)",
        plot_bgcolor="rgba(0,0,0,0)",
        legend=dict(orientation="h", yanchor="bottom", y=1.02, xanchor="center", x=0.5),
    )
    return fig


def render_reports(reports: List[VerificationReport]):
    """Metrics, stacked bar chart and failure drill-down for a suite run."""
    df = reports_to_dataframe(reports)
    if df.empty:
        st.info("Run a suite to see results.")
        return

    passed_runs = sum(r.passed for r in reports)
    failed_checks = int((df["Status"] == "Fail").sum())
    col1, col2, col3 = st.columns(3)
    col1.metric("Theorem runs", len(reports))
    col2.metric("Runs passed", passed_runs)
    col3.metric("Failing sub-checks", failed_checks)

    st.plotly_chart(build_status_chart(summarize_by_theorem(df)), use_container_width=True,
                    key="status_chart")

    failures = df[df["Status"] == "Fail"]
    if failures.empty:
        st.success("✅ All checks passed")
    else:
        st.write("### Failing sub-checks")
        runs = failures["Theorem"].unique()
        selected = st.selectbox("Theorem", options=runs)
        st.dataframe(
            failures[failures["Theorem"] == selected][["n", "Cutoff", "Check", "Detail", "Witness"]],
            hide_index=True,
            use_container_width=True,
        )

    with st.expander("All sub-checks"):
        st.dataframe(df, hide_index=True, use_container_width=True)
