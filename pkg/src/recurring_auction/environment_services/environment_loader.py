"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License.  See Project Root for the license information.
"""

import os
from pathlib import Path
from typing import List, Optional, Union

from aws_lambda_powertools import Logger
from dotenv import load_dotenv

from recurring_auction.errors import ConfigurationError

logger = Logger(__name__)

StrPath = Union[str, "os.PathLike[str]"]


class EnvironmentLoader:
    """Environment Loader"""

    def load_environment_file(
        self,
        *,
        starting_path: Optional[str] = None,
        file_name: Optional[str] = None,
        path: Optional[StrPath] = None,
        override: bool = False,
        raise_error_if_not_found: bool = False,
    ) -> bool:
        """
        Loads an environment file into memory. This passes off to load_dotenv.

        Args:
            starting_path: Where to begin the upward search for the file.
            file_name: Defaults to ".env".
            path: Explicit path; skips the search.
            override: Whether values in the file replace variables already set.
            raise_error_if_not_found: Raise instead of returning False.
        Returns:
            Bool: True if at least one environment variable is set else False
        """
        if file_name is None:
            file_name = ".env"

        new_path: StrPath | None = path or self.find_file(
            starting_path=starting_path or os.getcwd(),
            file_name=file_name,
            raise_error_if_not_found=raise_error_if_not_found,
        )
        if new_path is None:
            return False

        loaded = load_dotenv(dotenv_path=new_path, override=override, encoding="utf-8")
        logger.debug(f"Loaded environment file: {new_path}")
        return loaded

    def find_file(
        self, starting_path: str, file_name: str, raise_error_if_not_found: bool = True
    ) -> str | None:
        """Searches the directory and its parents for a file"""
        start = Path(starting_path).absolute()
        candidates = [start, *start.parents][:10]

        paths: List[str] = []
        for directory in candidates:
            tmp = os.path.join(directory, file_name)
            paths.append(tmp)
            if os.path.exists(tmp):
                return tmp

        if raise_error_if_not_found:
            searched_paths = "\n".join(paths)
            raise ConfigurationError(
                f"Failed to locate environment file: {file_name} in: \n {searched_paths}"
            )

        return None
