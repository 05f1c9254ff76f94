// Reads the taxonomy forest embedded in a downloaded generalized-ruleset
// document so the console can show which concrete items a generalized
// item stands for without an extra round trip.

export interface TaxonomyDoc {
  name: string;
  edges: [string, string][];
}

export interface GeneralizedDoc {
  format_version: string;
  kind: string;
  side: "lhs" | "rhs";
  taxonomies: TaxonomyDoc[];
  warnings: string[];
  rules: unknown[];
}

export function parseGeneralizedDoc(text: string): GeneralizedDoc {
  const doc = JSON.parse(text) as GeneralizedDoc;
  if (doc.kind !== "generalized-ruleset") {
    throw new Error(`expected a generalized-ruleset document, got ${JSON.stringify(doc.kind)}`);
  }
  return doc;
}

/** child -> parent over the whole forest. */
export function parentMap(taxonomies: TaxonomyDoc[]): Map<string, string> {
  const parents = new Map<string, string>();
  for (const tax of taxonomies) {
    for (const [child, parent] of tax.edges) {
      parents.set(child, parent);
    }
  }
  return parents;
}

/**
 * Leaf items reachable below `item`, sorted. An item with no children is its
 * own single descendant, matching how generalized rules match transactions.
 */
export function leafDescendants(taxonomies: TaxonomyDoc[], item: string): string[] {
  const children = new Map<string, string[]>();
  for (const tax of taxonomies) {
    for (const [child, parent] of tax.edges) {
      const list = children.get(parent);
      if (list) list.push(child);
      else children.set(parent, [child]);
    }
  }
  const leaves: string[] = [];
  const stack = [item];
  while (stack.length > 0) {
    const node = stack.pop()!;
    const kids = children.get(node);
    if (kids && kids.length > 0) stack.push(...kids);
    else leaves.push(node);
  }
  leaves.sort();
  return leaves;
}
