"""Evaluation harness: synthetic corpus, mutations, experiments and reports."""

from .corpus import entropy_summary, load_corpus, make_corpus
from .experiments import alignment_test, build_db, fragment_test, noise_test, scb_test
from .mutations import MutationSpec
from .report import TestReport, lower_bound_report
