// Component tree layout derived from the instance's partonomy.

import type { PartonomyEdge } from "./api.js";

export interface TreeNode {
  name: string;
  /** how this node hangs off its parent; roots have no kind */
  kind: "mandatory" | "optional" | null;
  children: TreeNode[];
}

/**
 * Arrange components as a forest: wholes above parts, components without
 * partonomy edges as standalone roots. A part with several wholes appears
 * under each of them.
 */
export function buildComponentTree(
  components: string[],
  partonomy: PartonomyEdge[],
): TreeNode[] {
  const childEdges = new Map<string, PartonomyEdge[]>();
  const isPart = new Set<string>();
  for (const edge of partonomy) {
    const list = childEdges.get(edge.whole) ?? [];
    list.push(edge);
    childEdges.set(edge.whole, list);
    isPart.add(edge.part);
  }

  const build = (name: string, kind: TreeNode["kind"]): TreeNode => ({
    name,
    kind,
    children: (childEdges.get(name) ?? [])
      .slice()
      .sort((a, b) => a.part.localeCompare(b.part))
      .map((edge) => build(edge.part, edge.kind)),
  });

  return components
    .filter((c) => !isPart.has(c))
    .sort((a, b) => a.localeCompare(b))
    .map((name) => build(name, null));
}
