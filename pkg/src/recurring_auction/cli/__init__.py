"""
Geek Cafe, LLC
Maintainers: Eric Wilson
MIT License. See Project Root for the license information.
"""

from recurring_auction.cli.main import main

__all__ = ["main"]
