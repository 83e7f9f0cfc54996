"""vine: a neuroevolution inspection workbench.

Train ES/GA policies on built-in desk-scale tasks while recording behavior
characterizations, reduce them to 2-D views, and explore runs through an
HTTP inspector with seed-exact rollout replay.
"""

from .archive import (GenerationRecord, GaMemberRecord, OffspringRecord,
                      RunArchive, RunManifest, RunWriter, read_run,
                      reconstruct_params)
from .envs import (ENVIRONMENTS, EvalResult, PolicySpec, RolloutRequest,
                   RolloutTrace, get_environment, policy_forward, rollout,
                   trajectory_bc)
from .evolution import (EsConfig, GaConfig, OffspringSpec, RunSummary,
                        centered_ranks, es_update, es_update_from_noise,
                        ga_step, ga_step_detailed, offspring_specs,
                        perturbation, run_evolution)
from .pca import CovariancePca, jacobi_eigh
from .session import (PointSlice, Session, SlicePoint, fitness_curve,
                      generation_points, load_session, nearest_point,
                      percentile_bins)
from .tsne import ExactTsne, joint_probabilities, sigma_search
from .views import ReducedView, list_views, read_view, reduce_run, write_view

__version__ = "0.1.0"
