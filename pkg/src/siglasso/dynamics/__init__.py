"""Network dynamics that generate reconstruction data."""
from .kuramoto import (KuramotoParams, KuramotoTrajectory,
                       build_kuramoto_regression, coupling, dump_kuramoto,
                       load_kuramoto, simulate_kuramoto)
from .pdg import (COOPERATE, DEFECT, PdgParams, PdgTrajectory,
                  build_pdg_regression, dilemma_matrix, dump_pdg, fermi_prob,
                  load_pdg, pdg_payoff, simulate_pdg)


def build_regression(traj, node):
    """Dispatch to the PDG or Kuramoto regression builder."""
    if isinstance(traj, KuramotoTrajectory):
        return build_kuramoto_regression(traj, node)
    return build_pdg_regression(traj, node)


__all__ = [
    "COOPERATE", "DEFECT", "KuramotoParams", "KuramotoTrajectory", "PdgParams",
    "PdgTrajectory", "build_kuramoto_regression", "build_pdg_regression",
    "build_regression", "coupling", "dilemma_matrix", "dump_kuramoto",
    "dump_pdg", "fermi_prob", "load_kuramoto", "load_pdg", "pdg_payoff",
    "simulate_kuramoto", "simulate_pdg",
]
