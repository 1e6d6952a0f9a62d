# Copyright (c) 2026  tsrisk Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License"
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
from .loss import *
from . import loss
from .predictor import *
from . import predictor
from .hypothesis_classes import *
from . import hypothesis_classes
from .risk import *
from . import risk

__all__ = []
__all__ += loss.__all__
__all__ += predictor.__all__
__all__ += hypothesis_classes.__all__
__all__ += risk.__all__
