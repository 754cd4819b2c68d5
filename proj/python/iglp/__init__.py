"""Inverse Gaussian heat/Poisson kernels and Littlewood-Paley g-functions."""

try:
    from . import _iglp  # installed wheel layout
except ImportError:
    import _iglp  # in-tree build: extension sits on PYTHONPATH

HermiteExpansion = _iglp.HermiteExpansion
corpus_to_json = _iglp.corpus_to_json
dt_m_ou = _iglp.dt_m_ou
dxk_dtm_invgauss = _iglp.dxk_dtm_invgauss
g_value = _iglp.g_value
heat_action = _iglp.heat_action
hermite = _iglp.hermite
hermite_tilde = _iglp.hermite_tilde
hermite_tilde_l2_norm = _iglp.hermite_tilde_l2_norm
in_local_region = _iglp.in_local_region
invgauss_heat = _iglp.invgauss_heat
j_region_log_measure = _iglp.j_region_log_measure
m_admissibility = _iglp.m_admissibility
make_corpus = _iglp.make_corpus
mehler_ou = _iglp.mehler_ou
poisson_action = _iglp.poisson_action
poisson_kernel = _iglp.poisson_kernel
riesz_transform = _iglp.riesz_transform
stirling2 = _iglp.stirling2

__all__ = [
    "HermiteExpansion",
    "corpus_to_json",
    "dt_m_ou",
    "dxk_dtm_invgauss",
    "g_value",
    "heat_action",
    "hermite",
    "hermite_tilde",
    "hermite_tilde_l2_norm",
    "in_local_region",
    "invgauss_heat",
    "j_region_log_measure",
    "m_admissibility",
    "make_corpus",
    "mehler_ou",
    "poisson_action",
    "poisson_kernel",
    "riesz_transform",
    "stirling2",
]
