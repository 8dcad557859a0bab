# Copyright 2026 the qms-epr authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Entropy production of quantum Markov semigroups on matrix algebras."""

from qmsepr._core import (
    __version__,
    check_theta_sqdb,
    choi_state,
    circulant_choi,
    circulant_generator_super,
    closed_form_epr,
    epr_slope,
    fr_epr,
    gksl_super,
    kraus_to_super,
    omega,
    relative_entropy,
    relative_entropy_psd,
    relent_semigroup,
    run_config,
    s_adjoint_super,
    semigroup_map_super,
    theta_kms_adjoint_super,
)

__all__ = [
    "__version__",
    "check_theta_sqdb",
    "choi_state",
    "circulant_choi",
    "circulant_generator_super",
    "closed_form_epr",
    "epr_slope",
    "fr_epr",
    "gksl_super",
    "kraus_to_super",
    "omega",
    "relative_entropy",
    "relative_entropy_psd",
    "relent_semigroup",
    "run_config",
    "s_adjoint_super",
    "semigroup_map_super",
    "theta_kms_adjoint_super",
]
