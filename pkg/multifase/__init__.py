"""Estimacao otima de multiplas fases com POVM covariante."""
