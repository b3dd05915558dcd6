"""
Corrected average density of a support list.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from sparsecut.bounds.models import BoundReport
from sparsecut.core.config import get_settings
from sparsecut.core.constants import BoundKind
from sparsecut.core.errors import CapExceededError, NoCoveringSubListError
from sparsecut.graphs.models import SupportList

logger = logging.getLogger(__name__)


def corrected_average_density(
    support_list: SupportList, cap: Optional[int] = None
) -> BoundReport:
    """
    Largest average member size over the sub-collections that cover every node.

    Args:
        support_list: The support list V
        cap: Maximum list length, defaults to ``SPARSECUT_DENSITY_LIST_CAP``
    Returns:
        BoundReport (general_density) with value and density D_V, and the
        maximizing sub-list as certificate
    """
    cap = get_settings().density_list_cap if cap is None else cap
    members = list(support_list.members)
    if len(members) > cap:
        raise CapExceededError("support list length", len(members), cap)
    if not support_list.covers():
        raise NoCoveringSubListError("the support list does not cover every node")
    full = (1 << support_list.node_count) - 1
    masks = support_list.masks()
    sizes = [len(m) for m in members]
    # reach[i]: nodes coverable by members i..end
    reach = [0] * (len(masks) + 1)
    for i in range(len(masks) - 1, -1, -1):
        reach[i] = reach[i + 1] | masks[i]

    best: List = [None, []]  # [Fraction, chosen indices]
    chosen: List[int] = []

    def search(i: int, covered: int, total: int) -> None:
        if covered | reach[i] != full:
            return
        if i == len(masks):
            value = Fraction(total, len(chosen))
            if best[0] is None or value > best[0]:
                best[0], best[1] = value, list(chosen)
            return
        chosen.append(i)
        search(i + 1, covered | masks[i], total + sizes[i])
        chosen.pop()
        search(i + 1, covered, total)

    search(0, 0, 0)
    if best[0] is None:
        # only an empty node range gets here
        return BoundReport(bound_kind=BoundKind.GENERAL_DENSITY, value=Fraction(0),
                           density=Fraction(0), support_list=support_list)
    sub_list = SupportList(
        node_count=support_list.node_count, members=[members[i] for i in best[1]]
    )
    logger.debug("corrected average density %s from %d members", best[0], len(sub_list))
    return BoundReport(
        bound_kind=BoundKind.GENERAL_DENSITY,
        value=best[0],
        density=best[0],
        support_list=support_list,
        sub_list=sub_list,
    )
