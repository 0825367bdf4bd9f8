"""Homework-management service: users, projects, submissions, grading
orchestration and cohort statistics over a transactional store."""

from .config import ServiceConfig, load_config
from .store import Store

__all__ = ["ServiceConfig", "Store", "load_config"]
