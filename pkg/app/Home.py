import streamlit as st

from app.components.report_view import render_reports
from app.suite_discovery import discover_suites
from core import config
from core.errors import DivlieError
from core.report_cache import clear_report_cache
from validations.theorem_runner import run_suite_from_yaml

# =========================================================
# Page setup
# =========================================================
st.set_page_config(page_title="divlie verification", layout="wide")
st.title("Divergence-constrained Lie algebras: verification reports")

try:
    config.ensure_settings()
except RuntimeError as e:
    st.error(str(e))
    st.stop()

suites = discover_suites()

with st.sidebar:
    st.write("**Settings**")
    st.json(config.settings_summary())
    if st.button("🔄 Clear cached reports", key="clear_report_cache"):
        removed = clear_report_cache()
        st.success(f"Removed {removed} cached report(s)")
        st.session_state.pop("reports", None)

if not suites:
    st.warning(f"No suites found in {config.SUITES_DIR}")
    st.stop()

# =========================================================
# Suite selection
# =========================================================
names = [s["suite_name"] for s in suites]
selected_name = st.selectbox("Suite", options=names)
suite = next(s for s in suites if s["suite_name"] == selected_name)

if suite["description"]:
    st.caption(suite["description"])
st.caption(f"{suite['check_count']} checks · seed {suite['seed'] if suite['seed'] is not None else config.DEFAULT_SEED}")

use_cache = st.checkbox("Use cached reports", value=True)

if st.button("▶ Run suite", type="primary"):
    with st.spinner(f"Running {selected_name}..."):
        try:
            st.session_state["reports"] = run_suite_from_yaml(suite["yaml_path"], use_cache=use_cache)
            st.session_state["reports_suite"] = selected_name
        except (DivlieError, ValueError) as e:
            st.error(f"❌ {e}")
            st.session_state.pop("reports", None)

# =========================================================
# Results
# =========================================================
if st.session_state.get("reports_suite") == selected_name and "reports" in st.session_state:
    render_reports(st.session_state["reports"])
else:
    st.info("Run the suite to see its reports.")
