# -*- coding: UTF-8 -*-
from .std_logger import get_logger, get_run_logger
from .kernels import SpinAngle, PhasePoint, ModeEntry, Trace, Fixed, PositionMarginal, MomentumMarginal
from .states import (StateVector, DensityOperator, SystemSignature, build_reference_spin_state, build_orbital,
                     with_spin, build_jm_state, build_helium, build_lithium, build_pi_bond, slater_determinant)
from .engine import (ReductionPlan, SphereAngle, EqualAngle, slice_plan, evaluate, position_density,
                     momentum_density, bloch_field, entanglement_entropy, overlap, angular_momentum_z)
from .scene import FigureRecipe, build_scene, export_scene, load_scene
from .render import Camera, render as render_scene
