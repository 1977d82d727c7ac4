"""Configuration, orchestration and reports."""
from .schema import ExperimentConfig, ExperimentConfigSchema, FractionField, load_experiment
from .pipeline import AsymptoticReport, ArcSample, Instance, SumsReport, prepare, new_report, stage, run_check, \
    run_counts, run_series, run_integral, run_sums, run_verify
from .report import SCHEMA_VERSION, emit_report, report_document, dumps, sweep_rows, summary_lines
