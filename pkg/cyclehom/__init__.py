# -*- coding: utf-8 -*-

"""List homomorphism to odd cycles on graphs of bounded diameter."""

from __future__ import (absolute_import,
                        unicode_literals, print_function, division)
