"""
circle-lab: computational checks of the circle method for systems of forms over number fields.
"""
import json
import os
from pathlib import PurePath
from typing import Optional, Union

from flask import Config


def create_lab(config_file: Optional[Union[str, PurePath]] = None) -> Config:
    """Create the lab configuration.

    Configuration is layered in the following order:

    - default_settings.py in the circlelab package.
    - config_file parameter passed to this factory method, a ``.json`` file or Python source.

    Only UPPERCASE keys are honoured. The environment is never consulted.

    Args:
        config_file (Union[str, PurePath]): Path to the experiment file.

    Returns:
        The merged configuration mapping.
    """
    config = Config(os.getcwd())
    config.from_object('circlelab.default_settings')
    if config_file is not None:
        path = os.path.abspath(str(config_file))
        if path.endswith('.json'):
            config.from_file(path, load=json.load)
        else:
            config.from_pyfile(path)
    return config
