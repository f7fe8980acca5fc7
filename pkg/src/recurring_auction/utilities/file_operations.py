"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License.  See Project Root for the license information.
"""

import os
import tempfile

from aws_lambda_powertools import Logger

logger = Logger(__name__)


class FileOperations:
    """
    General File Operations
    """

    @staticmethod
    def makedirs(path: str) -> None:
        """Create a directory and all sub directories."""
        if not path:
            return
        abs_path = os.path.abspath(path)
        os.makedirs(abs_path, exist_ok=True)

    @staticmethod
    def get_directory_name(path: str) -> str:
        """
        Get the directory path from a path that is either a directory
        or a path to a file.
        """
        return os.path.dirname(path)

    @staticmethod
    def read_file(path: str, encoding: str = "utf-8") -> str:
        """
        Read a file
        """
        logger.debug(f"reading file {path}")
        with open(path, "r", encoding=encoding) as file:
            data = file.read()
        return data

    @staticmethod
    def write_file(path: str, output: str | None) -> str:
        """
        Writes a file atomically: a temp file in the same directory is renamed
        over the target.

        Args:
            path (str): path
            output (str): text to write to the file
        Returns:
            str: path to the file
        """
        dirname = FileOperations.get_directory_name(os.path.abspath(path))
        FileOperations.makedirs(dirname)

        if output is None:
            output = ""
        fd, tmp_path = tempfile.mkstemp(dir=dirname, prefix=".tmp-", suffix=".part")
        try:
            with os.fdopen(fd, mode="w", encoding="utf-8", newline="") as file:
                file.write(output)
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise

        logger.debug(f"wrote file {path}")
        return path
